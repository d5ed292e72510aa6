"""Fast exact evaluation by modular interpolation.

The state-model sweep is run numerically at the points
``(p, q^(1/2)) = (eta^i, zeta^j)`` where ``eta`` has order ``Np`` and ``zeta``
has order ``2 Nq`` modulo a prime ``P``, so ``q`` runs over the ``Nq``-th roots
of unity.  A 2D inverse DFT recovers the coefficients modulo ``P``; several
primes are combined by CRT.

Soundness does not rest on guesses:

* exponent windows come from a support-tracking pass over the same sweep
  (a bounding box per amplitude), so ``Np`` and ``Nq`` cover every monomial;
* a coefficient bound (sum of absolute values, propagated the same way)
  fixes the number of primes;
* the interpolant is compared with a direct evaluation at a random point,
  which catches half-integral ``q`` exponents and any kernel defect.

Braid operators are used in a gauge without the square root (see
:func:`~linksgould.representation.radical_free_entries`).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .braids import BraidWord
from .laurent import LaurentPoly2
from .representation import RepresentationData, radical_free_entries

__all__ = ["evaluate_modular", "PRIMES", "support_bounds"]

# P - 1 divisible by 2^10 3^3 5^2 7, so many transform lengths are available.
_SMOOTH = 2**10 * 3**3 * 5**2 * 7
PRIMES = (1069286401, 1040256001, 1035417601, 1020902401, 987033601, 962841601,
          958003201, 924134401, 904780801, 899942401, 866073601, 861235201,
          832204801, 827366401, 808012801, 769305601, 725760001, 706406401,
          701568001, 687052801, 677376001, 672537601, 653184001, 648345601)
_FACTORS_OF_SMOOTH = (2, 3, 5, 7)
_CACHE_BLOCK = 1 << 19  # target int64 elements per working array
_MIN_CHUNK = 8


def _transform_length(span: int, mult: int = 1, even: bool = False) -> int:
    """Smallest ``n >= span`` with ``mult * n`` dividing the smooth part of P-1
    (and ``n`` even when requested)."""
    best = None
    for a in range(11):
        for b in range(4):
            for c in range(3):
                for d in range(2):
                    n = 2**a * 3**b * 5**c * 7**d
                    if n < span or _SMOOTH % (mult * n) or (even and n % 2):
                        continue
                    if best is None or n < best:
                        best = n
    if best is None:
        raise ValueError(f"exponent span {span} too large")
    return best


@lru_cache(maxsize=None)
def _generator(P: int) -> int:
    m = (P - 1) // _SMOOTH
    factors = set(_FACTORS_OF_SMOOTH)
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors.add(f)
            m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, P):
        if all(pow(g, (P - 1) // f, P) != 1 for f in factors):
            return g
    raise ValueError("no generator")


def _root(P: int, order: int) -> int:
    return pow(_generator(P), (P - 1) // order, P)


# per-braid-width structure

@dataclass
class _Sector:
    states: np.ndarray          # global state ids
    inputs: np.ndarray          # local indices of input states (strand 0 in state 0)
    input_digits: np.ndarray    # (n_in, s) digits of the inputs
    trans: dict                 # (position, sign) -> (starts, src, eid), CSR by destination


@dataclass
class _Entries:
    polys: list                 # LaurentPoly2 per entry id
    ep: list                    # per entry: int arrays of p exponents
    er: list                    # per entry: r exponents (doubled q exponents)
    c: list                     # per entry: Python int coefficients
    box: np.ndarray             # (n, 4) min_p, max_p, min_r, max_r
    norm: np.ndarray            # (n,) sum of |coeff|


def _entry_data(polys):
    ep, er, cs, box, norm = [], [], [], [], []
    for f in polys:
        raw = f.raw_terms()
        a = [k[0] for k in raw]
        if any(x % 2 for x in a):
            raise ValueError("half-integral p exponent in operator entry")
        a = [x // 2 for x in a]
        b = [k[1] for k in raw]
        ep.append(np.array(a, dtype=np.int64))
        er.append(np.array(b, dtype=np.int64))
        cs.append(list(raw.values()))
        box.append((min(a), max(a), min(b), max(b)))
        norm.append(float(sum(abs(v) for v in raw.values())))
    return _Entries(polys, ep, er, cs, np.array(box, dtype=np.int64), np.array(norm))


class _Model:
    """Sector decomposition and transition lists for one representation and width."""

    def __init__(self, rep: RepresentationData, s: int):
        R, Ri, mu = radical_free_entries(rep)
        d = rep.dim
        self.dim, self.s = d, s
        keys_pos, keys_neg = sorted(R), sorted(Ri)
        self.entries = _entry_data([R[k] for k in keys_pos] + [Ri[k] for k in keys_neg])
        self.mu = _entry_data(list(mu))
        n = d**s
        ids = np.arange(n, dtype=np.int64)
        digits = np.stack([(ids // d**i) % d for i in range(s)], axis=1)
        global_trans = {}
        rows, cols = [ids], [ids]
        for pos in range(s - 1):
            a, b = digits[:, pos], digits[:, pos + 1]
            for sign, keys, off in ((1, keys_pos, 0), (-1, keys_neg, len(keys_pos))):
                src_l, dst_l, eid_l = [], [], []
                for e, (o1, o2, i1, i2) in enumerate(keys):
                    src = ids[(a == i1) & (b == i2)]
                    dst = src + (o1 - i1) * d**pos + (o2 - i2) * d**(pos + 1)
                    src_l.append(src)
                    dst_l.append(dst)
                    eid_l.append(np.full(len(src), e + off, dtype=np.int64))
                src, dst, eid = (np.concatenate(x) for x in (src_l, dst_l, eid_l))
                if len(dst) and np.bincount(dst).max() > 7:
                    raise ValueError("operator too dense for deferred reduction")
                global_trans[(pos, sign)] = (src, dst, eid)
                rows.append(src)
                cols.append(dst)
        r, c = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        is_input = digits[:, 0] == 0
        self.sectors = []
        for lab in np.unique(labels[is_input]):
            states = ids[labels == lab]
            local = np.full(n, -1, dtype=np.int64)
            local[states] = np.arange(len(states))
            inputs = local[states[is_input[states]]]
            trans = {}
            for key, (src, dst, eid) in global_trans.items():
                m = labels[src] == lab
                order = np.argsort(local[dst[m]], kind="stable")
                ldst = local[dst[m]][order]
                starts = np.searchsorted(ldst, np.arange(len(states) + 1)).astype(np.int64)
                trans[key] = (starts, local[src[m]][order], eid[m][order])
            self.sectors.append(_Sector(states, inputs, digits[states[inputs]], trans))


@lru_cache(maxsize=32)
def _model(rep: RepresentationData, s: int) -> _Model:
    return _Model(rep, s)


# kernels

_NEG = np.iinfo(np.int64).min // 4
_POS = np.iinfo(np.int64).max // 4


@njit(cache=True)
def _bounds_step(lo_p, hi_p, lo_r, hi_r, nrm, starts, src, eid, box, enorm,
                 nlo_p, nhi_p, nlo_r, nhi_r, nnrm):
    n_in = lo_p.shape[1]
    nlo_p[:] = _POS
    nhi_p[:] = _NEG
    nlo_r[:] = _POS
    nhi_r[:] = _NEG
    nnrm[:] = 0.0
    for b in range(starts.shape[0] - 1):
        for t in range(starts[b], starts[b + 1]):
            a, e = src[t], eid[t]
            for j in range(n_in):
                if nrm[a, j] > 0.0:
                    nlo_p[b, j] = min(nlo_p[b, j], lo_p[a, j] + box[e, 0])
                    nhi_p[b, j] = max(nhi_p[b, j], hi_p[a, j] + box[e, 1])
                    nlo_r[b, j] = min(nlo_r[b, j], lo_r[a, j] + box[e, 2])
                    nhi_r[b, j] = max(nhi_r[b, j], hi_r[a, j] + box[e, 3])
                    nnrm[b, j] += nrm[a, j] * enorm[e]


@njit(cache=True)
def _apply(A, B, starts, src, eid, vals, P, Pinv):
    # At most 7 terms reach one destination and all factors are < P < 2^30, so
    # the raw sum stays below 2^63; it is reduced once via a float quotient
    # estimate (off by at most one).
    n_in, npts = A.shape[1], A.shape[2]
    acc = np.zeros((n_in, npts), dtype=np.int64)
    for b in range(B.shape[0]):
        acc[:] = 0
        for t in range(starts[b], starts[b + 1]):
            a, e = src[t], eid[t]
            for j in range(n_in):
                for k in range(npts):
                    acc[j, k] += vals[e, k] * A[a, j, k]
        for j in range(n_in):
            for k in range(npts):
                x = acc[j, k]
                r = x - np.int64(np.float64(x) * Pinv) * P
                if r < 0:
                    r += P
                elif r >= P:
                    r -= P
                B[b, j, k] = r


@njit(cache=True)
def _close(A, inputs, muprod, P, out):
    n_in, npts = A.shape[1], A.shape[2]
    for j in range(n_in):
        for k in range(npts):
            out[k] = (out[k] + A[inputs[j], j, k] * muprod[j, k]) % P


@njit(cache=True)
def _inverse_dft(F, winv_p, winv_q, P):
    """c[a, b] = sum_ij F[i, j] winv_p[(i a) % Np] winv_q[(j b) % Nq] (unscaled)."""
    Np, Nq = F.shape
    T = np.zeros((Np, Nq), dtype=np.int64)
    for a in range(Np):
        for i in range(Np):
            w = winv_p[(i * a) % Np]
            for j in range(Nq):
                T[a, j] = (T[a, j] + w * F[i, j]) % P
    C = np.zeros((Np, Nq), dtype=np.int64)
    for a in range(Np):
        for b in range(Nq):
            acc = 0
            for j in range(Nq):
                acc = (acc + T[a, j] * winv_q[(j * b) % Nq]) % P
            C[a, b] = acc
    return C


# passes

def support_bounds(b: BraidWord, rep: RepresentationData):
    """Rigorous exponent box and coefficient bound for the closed-braid value.

    Returns ``(pmin, pmax, rmin, rmax, norm)`` where r-exponents are doubled
    q-exponents and ``norm`` bounds the sum of absolute coefficients.
    """
    model = _model(rep, b.strands)
    E, M = model.entries, model.mu
    lo_p, hi_p, lo_r, hi_r, norm = _POS, _NEG, _POS, _NEG, 0.0
    for sec in model.sectors:
        n_st, n_in = len(sec.states), len(sec.inputs)
        arrs = [np.zeros((n_st, n_in), dtype=np.int64) for _ in range(4)] + [np.zeros((n_st, n_in))]
        arrs[0][:] = _POS
        arrs[1][:] = _NEG
        arrs[2][:] = _POS
        arrs[3][:] = _NEG
        cols = np.arange(n_in)
        for k in range(4):
            arrs[k][sec.inputs, cols] = 0
        arrs[4][sec.inputs, cols] = 1.0
        new = [np.empty_like(x) for x in arrs]
        for x in b.letters:
            starts, src, eid = sec.trans[(abs(x) - 1, 1 if x > 0 else -1)]
            _bounds_step(*arrs, starts, src, eid, E.box, E.norm, *new)
            arrs, new = new, arrs
        for j in range(n_in):
            i = sec.inputs[j]
            if arrs[4][i, j] == 0.0:
                continue
            digs = sec.input_digits[j][1:]
            mb = M.box[digs].sum(axis=0) if len(digs) else np.zeros(4, dtype=np.int64)
            mn = float(np.prod(M.norm[digs])) if len(digs) else 1.0
            lo_p = min(lo_p, arrs[0][i, j] + mb[0])
            hi_p = max(hi_p, arrs[1][i, j] + mb[1])
            lo_r = min(lo_r, arrs[2][i, j] + mb[2])
            hi_r = max(hi_r, arrs[3][i, j] + mb[3])
            norm += arrs[4][i, j] * mn
    return int(lo_p), int(hi_p), int(lo_r), int(hi_r), norm


def _powers(x: np.ndarray, lo: int, hi: int, P: int) -> dict:
    """``{e: x**e mod P}`` for ``lo <= e <= hi`` (elementwise)."""
    out = {0: np.ones_like(x)}
    inv = np.array([pow(int(v), -1, P) for v in x], dtype=np.int64)
    cur = np.ones_like(x)
    for e in range(1, hi + 1):
        cur = cur * x % P
        out[e] = cur
    cur = np.ones_like(x)
    for e in range(1, -lo + 1):
        cur = cur * inv % P
        out[-e] = cur
    return out


def _values(ent: _Entries, P: int, pv: np.ndarray, rv: np.ndarray) -> np.ndarray:
    """Entry values at the points ``(p, q^(1/2)) = (pv[k], rv[k])``."""
    ppow = _powers(pv, int(ent.box[:, 0].min()), int(ent.box[:, 1].max()), P)
    rpow = _powers(rv, int(ent.box[:, 2].min()), int(ent.box[:, 3].max()), P)
    out = np.zeros((len(ent.polys), len(pv)), dtype=np.int64)
    for e in range(len(ent.polys)):
        acc = np.zeros(len(pv), dtype=np.int64)
        for a, r, c in zip(ent.ep[e], ent.er[e], ent.c[e]):
            acc = (acc + (c % P) * (ppow[int(a)] * rpow[int(r)] % P)) % P
        out[e] = acc
    return out


def _sweep(b: BraidWord, model: _Model, P: int, pv, rv) -> np.ndarray:
    """Closed-braid value modulo ``P`` at each point ``(pv[k], rv[k])``."""
    pv = np.asarray(pv, dtype=np.int64) % P
    rv = np.asarray(rv, dtype=np.int64) % P
    vals = _values(model.entries, P, pv, rv)
    muvals = _values(model.mu, P, pv, rv)
    npts = len(pv)
    total = np.zeros(npts, dtype=np.int64)
    for sec in model.sectors:
        n_st, n_in = len(sec.states), len(sec.inputs)
        chunk = max(_MIN_CHUNK, min(npts, _CACHE_BLOCK // max(1, n_st * n_in)))
        mu_in = np.ones((n_in, npts), dtype=np.int64)
        for col in range(1, model.s):
            mu_in = mu_in * muvals[sec.input_digits[:, col]] % P
        for k0 in range(0, npts, chunk):
            k1 = min(npts, k0 + chunk)
            v = np.ascontiguousarray(vals[:, k0:k1])
            A = np.zeros((n_st, n_in, k1 - k0), dtype=np.int64)
            A[sec.inputs, np.arange(n_in), :] = 1
            B = np.empty_like(A)
            for x in b.letters:
                starts, src, eid = sec.trans[(abs(x) - 1, 1 if x > 0 else -1)]
                _apply(A, B, starts, src, eid, v, P, 1.0 / P)
                A, B = B, A
            out = np.zeros(k1 - k0, dtype=np.int64)
            _close(A, sec.inputs, np.ascontiguousarray(mu_in[:, k0:k1]), P, out)
            total[k0:k1] = (total[k0:k1] + out) % P
    return total


def _crt(residues: list[list[int]], primes: list[int]) -> list[int]:
    M = 1
    acc = [0] * len(residues[0])
    for res, P in zip(residues, primes):
        inv = pow(M, -1, P)
        acc = [x + M * (((int(rv) - x) * inv) % P) for x, rv in zip(acc, res)]
        M *= P
    half = M // 2
    return [x - M if x > half else x for x in acc]


def _cyclic_coeffs(values: np.ndarray, w: int, P: int) -> list[int]:
    """Inverse DFT of length ``N`` for samples at powers of ``w`` (order N)."""
    N = len(values)
    winv = pow(w, -1, P)
    ninv = pow(N, -1, P)
    vals = [int(v) for v in values]
    out = []
    for k in range(N):
        step = pow(winv, k, P)
        acc, cur = 0, 1
        for v in vals:
            acc += v * cur
            cur = cur * step % P
        out.append(acc * ninv % P)
    return out


def _scan_window(b, model, axis, lo, hi, stride, P, rng):
    """Exponent window ``[a0, a1]`` along one variable, in units of ``X``.

    ``X = p^stride`` (axis ``'p'``) or ``X = q`` (axis ``'q'``); ``lo..hi`` is a
    rigorous box for the exponents of ``X``.  The other variable is fixed at
    a random residue; ``N`` samples at roots of unity give the coefficients
    folded mod ``N``, whose nonzero arc is placed inside the box by matching
    one extra random point.  Falls back to the box when inconclusive.
    """
    if axis == "q":
        stride = 2  # X = q = r^2 with r the sampled variable
    span = hi - lo + 1
    N = _transform_length(min(span, 16), stride)
    while N < span:
        fixed = rng.randrange(2, P - 1)
        probe = rng.randrange(2, P - 1)
        theta = _root(P, stride * N)
        w = pow(theta, stride, P)
        samples = [pow(theta, i, P) for i in range(N)] + [probe]
        if axis == "p":
            F = _sweep(b, model, P, samples, [fixed] * (N + 1))
        else:
            F = _sweep(b, model, P, [fixed] * (N + 1), samples)
        x_check = pow(probe, stride, P)
        cyc = _cyclic_coeffs(F[:N], w, P)
        nz = [k for k in range(N) if cyc[k]]
        if not nz:
            return lo, hi
        # the arc of nonzero coefficients starts right after the longest zero gap
        best_gap, start = -1, nz[0]
        for i, k in enumerate(nz):
            nxt = nz[(i + 1) % len(nz)]
            gap = (nxt - k - 1) % N
            if gap > best_gap:
                best_gap, start = gap, nxt
        length = N - best_gap
        matches = []
        first = lo + ((start - lo) % N)
        for a0 in range(first, hi - length + 2, N):
            got = 0
            for off in range(length):
                c = cyc[(start + off) % N]
                if c:
                    got += c * pow(x_check, a0 + off, P)
            if got % P == int(F[N]):
                matches.append(a0)
        if matches:
            return min(matches), max(matches) + length - 1
        N = _transform_length(min(span, 2 * N), stride)
    return lo, hi


@dataclass(frozen=True)
class _Layout:
    """Sampling plan: windows for ``u = p^pstride`` and ``q``; ``coupled`` means
    only monomials with ``e_u + e_q`` even occur."""

    uwin: tuple[int, int]
    qwin: tuple[int, int]
    pstride: int
    coupled: bool

    def monomials(self):
        for a in range(self.uwin[0], self.uwin[1] + 1):
            for bq in range(self.qwin[0], self.qwin[1] + 1):
                if not self.coupled or (a + bq) % 2 == 0:
                    yield a, bq


def _grid_residues(b, model, P, lay: _Layout, checks):
    """Coefficients modulo ``P`` of the monomials of ``lay``, plus values at ``checks``."""
    Nu = _transform_length(lay.uwin[1] - lay.uwin[0] + 1, lay.pstride, lay.coupled)
    Nq = _transform_length(lay.qwin[1] - lay.qwin[0] + 1, 2, lay.coupled)
    theta, zeta = _root(P, lay.pstride * Nu), _root(P, 2 * Nq)
    rows = Nu // 2 if lay.coupled else Nu
    pts_p = [pow(theta, i, P) for i in range(rows) for _ in range(Nq)]
    pts_r = [pow(zeta, j, P) for _ in range(rows) for j in range(Nq)]
    pts_p += [c[0] for c in checks]
    pts_r += [c[1] for c in checks]
    F = _sweep(b, model, P, pts_p, pts_r)
    grid = np.empty((Nu, Nq), dtype=np.int64)
    grid[:rows] = F[:rows * Nq].reshape(rows, Nq)
    if lay.coupled:
        # f(-u, -q) = f(u, q): row i + Nu/2 is row i shifted by Nq/2
        grid[rows:] = np.roll(grid[:rows], Nq // 2, axis=1)
    winv_u = np.array([pow(theta, -lay.pstride * k, P) for k in range(Nu)], dtype=np.int64)
    omega = zeta * zeta % P
    winv_q = np.array([pow(omega, -k, P) for k in range(Nq)], dtype=np.int64)
    C = _inverse_dft(grid, winv_u, winv_q, P)
    scale = pow(Nu * Nq, -1, P)
    coeffs = [int(C[a % Nu, bq % Nq]) * scale % P for a, bq in lay.monomials()]
    return coeffs, [int(v) for v in F[rows * Nq:]]


def _check(coeffs, lay: _Layout, point, value, P) -> bool:
    pv, rv = point
    uv, qv = pow(pv, lay.pstride, P), rv * rv % P
    got = 0
    for c, (a, bq) in zip(coeffs, lay.monomials()):
        if c:
            got += c * pow(uv, a, P) * pow(qv, bq, P)
    return got % P == value


def _detect_layout(b, model, box_p, box_q, P, rng) -> _Layout:
    p0, r0 = rng.randrange(2, P - 1), rng.randrange(2, P - 1)
    iota = _root(P, 4)
    F = _sweep(b, model, P, [p0, P - p0, iota * p0 % P, P - p0],
               [r0, r0, iota * r0 % P, iota * r0 % P])
    pstride = 2 if F[1] == F[0] else 1
    coupled = bool(F[2] == F[0]) if pstride == 2 else bool(F[3] == F[0])
    ubox = (math.floor(box_p[0] / pstride), math.ceil(box_p[1] / pstride))
    uwin = _scan_window(b, model, "p", *ubox, pstride, P, rng)
    qwin = _scan_window(b, model, "q", *box_q, 2, P, rng)
    return _Layout(uwin, qwin, pstride, coupled)


def evaluate_modular(b: BraidWord, rep: RepresentationData, rng: random.Random | None = None) -> LaurentPoly2:
    """Exact closed-braid value via modular interpolation (see module docstring)."""
    from .engine import EngineError

    if b.strands == 1 and not b.letters:
        return LaurentPoly2.constant(1)
    model = _model(rep, b.strands)
    pmin, pmax, rmin, rmax, norm = support_bounds(b, rep)
    if norm == 0.0:
        return LaurentPoly2()
    box_p = (pmin, pmax)
    box_q = (math.floor(rmin / 2), math.ceil(rmax / 2))
    bound = 2.0 * norm * (1 + 1e-9) + 2
    nprimes, prod = 0, 1
    while prod <= bound:
        if nprimes == len(PRIMES):
            raise EngineError("coefficient bound exceeds available primes")
        prod *= PRIMES[nprimes]
        nprimes += 1
    rng = rng or random.Random(hash((b.strands, b.letters)))
    fallback = _Layout(box_p, box_q, 1, False)
    layouts = [_detect_layout(b, model, box_p, box_q, PRIMES[0], rng)]
    if layouts[0] != fallback:
        layouts.append(fallback)
    for lay in layouts:
        residues, ok = [], True
        for n in range(max(nprimes, 2)):
            P = PRIMES[n]
            checks = [(rng.randrange(2, P - 1), rng.randrange(2, P - 1))]
            coeffs, vals = _grid_residues(b, model, P, lay, checks)
            if not all(_check(coeffs, lay, c, v, P) for c, v in zip(checks, vals)):
                ok = False
                break
            residues.append(coeffs)
        if ok:
            break
    else:
        raise EngineError("modular interpolation failed its random-point check")
    lifted = _crt(residues[:nprimes], list(PRIMES[:nprimes]))
    terms = {}
    for c, (a, bq) in zip(lifted, lay.monomials()):
        if c:
            terms[(2 * lay.pstride * a, 2 * bq)] = c
    return LaurentPoly2(terms)
