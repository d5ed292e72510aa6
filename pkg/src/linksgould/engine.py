"""State-model evaluation of LG invariants on braid closures.

The closure is computed as a (1,1)-tangle: strand 0 enters and leaves in
basis state 0, strands ``1..s-1`` are closed with the quantum-trace weights
``mu``.  Two interchangeable routes produce the same exact polynomial:

``exact``
    one sweep over a sparse map ``(input state, current state) -> amplitude``
    with :class:`~linksgould.laurent.ExtendedPoly` amplitudes; the radical
    part of the result is asserted to vanish.
``modular``
    the same sweep evaluated numerically at roots of unity modulo several
    primes, interpolated by inverse DFT and lifted by CRT (see
    :mod:`linksgould.modular`).  Degree and coefficient bounds are tracked
    rigorously and every result is re-checked at a random point.
"""
from __future__ import annotations

from itertools import product

from .braids import BraidWord, closure_components, parse_braid_word
from .laurent import ExtendedPoly, LaurentPoly2
from .representation import (RepresentationData, bundled_representation,
                             validate_representation)

__all__ = [
    "EngineError",
    "evaluate_invariant",
    "lg21",
    "lg11",
    "ENGINE_VERSION",
]

ENGINE_VERSION = "1.0"


class EngineError(AssertionError):
    """An internal identity failed (bad representation data or engine bug)."""


def _require_valid(rep: RepresentationData) -> None:
    if not rep._validated:
        validate_representation(rep)
    if not rep.validated:
        raise EngineError(f"representation {rep.label} failed validation:\n{rep._validated[0]}")


def _tables(rep: RepresentationData):
    tabs = []
    for T in (rep.R, rep.R_inv):
        by_in: dict[tuple[int, int], list] = {}
        for (o1, o2, i1, i2), v in T.items():
            by_in.setdefault((i1, i2), []).append((o1, o2, v))
        tabs.append(by_in)
    return tabs


def _evaluate_exact(b: BraidWord, rep: RepresentationData) -> ExtendedPoly:
    d, s = rep.dim, b.strands
    disc = rep.mu[0].discriminant
    one = ExtendedPoly(LaurentPoly2.constant(1), None, disc)
    pos_tab, neg_tab = _tables(rep)
    state = {}
    for rest in product(range(d), repeat=s - 1):
        st = (0,) + rest
        state[(st, st)] = one
    for x in b.letters:
        i = abs(x) - 1
        tab = pos_tab if x > 0 else neg_tab
        new: dict = {}
        for (inp, st), amp in state.items():
            for o1, o2, v in tab.get((st[i], st[i + 1]), ()):
                key = (inp, st[:i] + (o1, o2) + st[i + 2:])
                val = v * amp
                if key in new:
                    val = new[key] + val
                if val.is_zero():
                    new.pop(key, None)
                else:
                    new[key] = val
        state = new
    total = ExtendedPoly(LaurentPoly2(), None, disc)
    for (inp, st), amp in state.items():
        if inp == st:
            w = amp
            for k in inp[1:]:
                w = w * rep.mu[k]
            total = total + w
    return total


def evaluate_invariant(b: BraidWord | str, rep: RepresentationData, method: str = "auto") -> LaurentPoly2:
    """Invariant of the closure of ``b``, normalized so the unknot gives 1.

    ``method`` is ``'exact'``, ``'modular'`` or ``'auto'`` (modular unless the
    braid is tiny).  Raises :class:`EngineError` if the radical part survives,
    an exponent is not integral, or the modular route fails its check.
    """
    if isinstance(b, str):
        b = parse_braid_word(b)
    _require_valid(rep)
    if method == "auto":
        method = "exact" if b.strands <= 2 and len(b) <= 4 else "modular"
    if method == "exact":
        val = _evaluate_exact(b, rep)
        if not val.radical.is_zero():
            raise EngineError("radical part of a closed-braid value is nonzero")
        f = val.base
    elif method == "modular":
        from .modular import evaluate_modular
        f = evaluate_modular(b, rep)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not f.is_integral():
        raise EngineError("closed-braid value has half-integral exponents")
    return f


def lg21(b: BraidWord | str, method: str = "auto") -> LaurentPoly2:
    """The Links-Gould invariant LG^{2,1}(q, p) of the closure of ``b``."""
    return evaluate_invariant(b, bundled_representation("LG21"), method)


def lg11(b: BraidWord | str, method: str = "auto") -> LaurentPoly2:
    """LG^{1,1}, a Laurent polynomial in ``p`` alone (the Alexander-Conway polynomial)."""
    return evaluate_invariant(b, bundled_representation("LG11"), method)
