"""Implicit function theorem at series level: degree-by-degree linear solves.

Given equations ``E_i(knowns, unknowns) = 0`` vanishing at the origin with
an invertible Jacobian with respect to the unknowns there, the unique
solutions ``u_j = S_j(knowns)`` with ``S_j(0) = 0`` are built one
homogeneous degree at a time: if ``S`` is exact below degree ``d``, the
residual ``E(k, S)`` starts at degree ``d`` and its degree-``d`` part
equals ``J (S - S_true)_d``, so a single exact linear solve per monomial
restores exactness below ``d + 1``.  This is jet-level Newton iteration
with deterministic cost, not a fixed-point loop.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InternalCheckError, NotSolvableError
from .rational import ZERO
from .series import TruncSeries


def _invert_matrix(j: list) -> list:
    n = len(j)
    if n == 1:
        a = j[0][0]
        if a.is_zero():
            raise NotSolvableError("singular Jacobian at the origin")
        return [[a.inv()]]
    a, b = j[0]
    c, d = j[1]
    det = a * d - b * c
    if det.is_zero():
        raise NotSolvableError("singular Jacobian at the origin")
    inv = det.inv()
    return [[d * inv, -b * inv], [-c * inv, a * inv]]


def implicit_solve(
    eqs: Sequence[TruncSeries], unknowns: Sequence[str], order: int
) -> dict:
    """Solve ``eqs = 0`` for ``unknowns`` as series in the remaining variables.

    Returns a map ``unknown -> TruncSeries`` over the known variables (in
    their original order); every solution has zero constant term and
    substituting the solutions back makes each equation vanish to ``order``
    (checked, a failure here is an internal bug).
    """
    unknowns = list(unknowns)
    if len(eqs) != len(unknowns) or len(eqs) not in (1, 2):
        raise NotSolvableError("need one or two equations, matching the unknown count")
    space = eqs[0].vars
    for eq in eqs:
        if eq.vars != space:
            raise NotSolvableError("equations live in different variable spaces")
        if not eq.constant_term().is_zero():
            raise NotSolvableError("equation does not vanish at the origin")
        if eq.order < order:
            raise NotSolvableError(
                f"equation known only to order {eq.order} < requested {order}"
            )
    for u in unknowns:
        if u not in space:
            raise NotSolvableError(f"unknown {u!r} is not a variable of {space}")
    knowns = tuple(v for v in space if v not in unknowns)

    def unit_mono(var):
        return tuple(1 if v == var else 0 for v in space)

    jac = [[eq.coeff(unit_mono(u)) for u in unknowns] for eq in eqs]
    jinv = _invert_matrix(jac)

    sols = {u: TruncSeries.zero(knowns, order) for u in unknowns}
    for d in range(1, order):
        residuals = [eq.substitute({u: sols[u] for u in unknowns}) for eq in eqs]
        parts = [
            {m: c for m, c in r.terms.items() if sum(m) == d} for r in residuals
        ]
        if not any(parts):
            continue
        monos = set()
        for p in parts:
            monos.update(p)
        for j, u in enumerate(unknowns):
            delta = {}
            for mono in monos:
                val = ZERO
                for i in range(len(eqs)):
                    val = val + jinv[j][i] * parts[i].get(mono, ZERO)
                if not val.is_zero():
                    delta[mono] = -val
            if delta:
                sols[u] = sols[u] + TruncSeries(knowns, delta, order)
    for eq in eqs:
        residual = eq.substitute({u: sols[u] for u in unknowns})
        if not residual.is_zero():
            raise InternalCheckError(
                "implicit solve residual does not vanish to the requested order"
            )
    return sols
