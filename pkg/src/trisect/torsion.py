"""Abelian Reidemeister torsion from a trisection diagram.

The punctured manifold (X minus a ball, with a base point) has a three-term
based complex over F, at degrees 3, 2, 1:

    D3 = (dLa meet dLb) + (dLb meet dLc) + (dLc meet dLa)
      --zeta-->  D2 = dLa + dLb + dLc  --iota-->  D1 = F^{2g}

with zeta(x, y, z) = (x - z, y - x, z - y) and iota the sum.  Here dL is the
span of the Fox lifts of a curve system.  The closed-manifold torsion is
tau(X) = tau(punctured) / (phi(u) - 1).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence

from .diagram import Diagram, InvalidDiagram
from .flinalg import (Subspace, det_lambda, extend_basis, independent_subset, rank_lambda, solve_f,
                      sub_intersect, sub_member, to_lambda_vector, NoSolutionF)
from .forms import decompose_twisted
from .homology import TrivialPhi, homology_twisted, twisted_setup
from .ring import Frac, LaurentPoly, canon, frac_units_equal, parse_poly
from .word import Word, WordError, fox_lift, parse_word

PM_MONOMIAL = "pm-monomial"
RATIONAL_SCALAR = "rational-scalar"


class BasisError(ValueError):
    """A supplied homology basis has the wrong size or is dependent."""


class TorsionError(ArithmeticError):
    pass


# --- vectors with Frac entries ----------------------------------------------


def _fr(v, b):
    return [Frac.coerce(x, b) for x in v]


def _lam_cols(cols, b):
    """Clear denominators column by column: cols[j] = W[j] / den[j]."""
    W, dens = [], []
    for c in cols:
        fr = _fr(c, b)
        w = to_lambda_vector(fr, b)
        x = next(i for i, y in enumerate(fr) if y)
        dens.append(Frac(w[x]) / fr[x])
        W.append(w)
    return W, dens


def change_of_basis(X: Sequence, C: Sequence, b: int) -> Frac:
    """[X / C]: determinant of the matrix writing the family X in the basis C.

    Both are lists of ambient vectors spanning the same k-dimensional space.
    """
    k = len(C)
    if len(X) != k:
        raise BasisError(f"family has {len(X)} vectors, basis has {k}")
    if k == 0:
        return Frac.from_int(1, b)
    Wc, dc = _lam_cols(C, b)
    Wx, dx = _lam_cols(X, b)
    n = len(Wc[0])
    rows_c = [[Wc[j][i] for j in range(k)] for i in range(n)]
    S = independent_subset(rows_c)
    if len(S) != k:
        raise TorsionError("basis vectors are dependent")
    detc = det_lambda([rows_c[i] for i in S], b)
    detx = det_lambda([[Wx[j][i] for j in range(k)] for i in S], b)
    val = Frac(detx, detc)
    for d in dc:
        val = val * d
    for d in dx:
        val = val / d
    return val


@dataclass
class BasedChain:
    """One degree of a based complex: ambient vectors for the basis c,
    the boundary map to the next lower degree, and a homology basis h."""
    degree: int
    c: list
    boundary: Optional[Callable] = None
    h: list = field(default_factory=list)


def torsion_of_based_complex(chains: Sequence[BasedChain], nvars: int, rng: Optional[random.Random] = None,
                             details: Optional[dict] = None) -> Frac:
    """prod_i [(b_i h_i) b~_{i-1} / c_i]^((-1)^(i+1)), chains listed from the top degree.

    b_{i-1} is a basis of the image of the boundary from degree i and b~_{i-1}
    a lift.  With rng, the boundary bases are random combinations of the images
    (the result does not depend on them).
    """
    b = nvars
    bnd: dict = {}  # degree -> (b in that degree, lifts one degree up)
    for ch in chains:
        if ch.boundary is None or not ch.c:
            continue
        imgs = [ch.boundary(v) for v in ch.c]
        lam_imgs = [to_lambda_vector(_fr(v, b), b) for v in imgs]
        idx = independent_subset(lam_imgs)
        k = len(idx)
        if rng is None or k == 0:
            lifts = [ch.c[i] for i in idx]
        else:
            while True:
                R = [[rng.randint(-2, 2) for _ in ch.c] for _ in range(k)]
                lifts = [_lin(R[j], ch.c, b) for j in range(k)]
                if rank_lambda([to_lambda_vector(ch.boundary(v), b) for v in lifts]) == k:
                    break
        bnd[ch.degree - 1] = ([ch.boundary(v) for v in lifts], lifts)
    tau = Frac.from_int(1, b)
    for ch in chains:
        i = ch.degree
        bi = bnd.get(i, ([], []))[0]
        lift_below = bnd.get(i - 1, ([], []))[1]
        fam = list(bi) + list(ch.h) + list(lift_below)
        if len(fam) != len(ch.c):
            raise BasisError(f"degree {i}: homology basis has the wrong size "
                             f"({len(ch.h)} given, {len(ch.c) - len(bi) - len(lift_below)} needed)")
        val = change_of_basis(fam, ch.c, b)
        if val.is_zero():
            raise BasisError(f"degree {i}: homology classes are dependent or not homology classes")
        if details is not None:
            details[i] = val
        tau = tau * val if (i + 1) % 2 == 0 else tau / val
    return tau


def _lin(coeffs, vecs, b):
    out = [Frac.from_int(0, b) for _ in vecs[0]]
    for a, v in zip(coeffs, vecs):
        if a:
            out = [x + Frac.coerce(y, b) * a for x, y in zip(out, v)]
    return out


# --- certified intersection bases -------------------------------------------


def lambda_coefficients(gens: Sequence, v: Sequence, b: int):
    """Coefficients of v on gens if they all lie in Lambda, else None."""
    try:
        sol = solve_f(gens, list(v), b)
    except NoSolutionF:
        return None
    return sol if all(x.is_poly() for x in sol) else None


def intersection_basis(U: Subspace, V: Subspace, gens_u: Optional[list] = None,
                       gens_v: Optional[list] = None):
    """F-basis of U meet V by primitive Lambda-vectors, plus a certification flag.

    Certified means: the basis has a maximal minor equal to 1, so its Lambda-span
    is a direct summand of Lambda^n, and (when generators of the Lambda-modules
    are supplied) each basis vector is a Lambda-combination of both generator
    sets.  Together these imply the basis spans the Lambda-intersection.
    """
    W = sub_intersect(U, V)
    k = W.dim
    b = U.nvars
    if k == 0:
        return [], True
    B = W.basis
    n = U.n
    best = None
    for S in combinations(range(n), k):
        minor = [[B[j][i] for i in S] for j in range(k)]
        dmin = det_lambda(minor, b)
        if dmin.is_zero():
            continue
        if dmin.is_unit():
            best = B
            break
        # try to renormalize so this minor becomes the identity
        cols = [[B[j][i] for j in range(k)] for i in range(n)]
        Mt = [[B[j][i] for i in S] for j in range(k)]  # k x k, rows = basis vecs
        try:
            new = []
            for t in range(k):
                e = [LaurentPoly.one(b) if s == t else LaurentPoly.zero(b) for s in range(k)]
                # combination x of basis vectors whose S-coordinates are e
                x = solve_f([[Mt[j][s] for s in range(k)] for j in range(k)], e, b)
                vec = _lin(x, B, b)
                if not all(y.is_poly() for y in vec):
                    raise NoSolutionF()
                new.append([y.to_poly() for y in vec])
            best = new
            break
        except NoSolutionF:
            continue
    if best is None:
        return B, False
    ok = True
    for g in (gens_u, gens_v):
        if g is not None:
            for v in best:
                if lambda_coefficients(g, v, b) is None:
                    ok = False
    return best, ok


# --- the D-complex ----------------------------------------------------------


NAMES = ("alpha", "beta", "gamma")


@dataclass
class DComplex:
    g: int
    nvars: int
    c3: list  # ambient vectors of length 6g
    c2: list
    c1: list
    certified: dict
    pair_bases: dict

    def zeta(self, v):
        n = 2 * self.g
        x, y, z = v[:n], v[n:2 * n], v[2 * n:]
        return ([a - c for a, c in zip(x, z)] + [a - c for a, c in zip(y, x)] + [a - c for a, c in zip(z, y)])

    def iota(self, v):
        n = 2 * self.g
        return [a + b + c for a, b, c in zip(v[:n], v[n:2 * n], v[2 * n:])]

    def dims(self):
        b = self.nvars
        im_z = rank_lambda([to_lambda_vector(_fr(self.zeta(v), b), b) for v in self.c3]) if self.c3 else 0
        im_i = rank_lambda([to_lambda_vector(_fr(self.iota(v), b), b) for v in self.c2]) if self.c2 else 0
        return {
            "ker_zeta": len(self.c3) - im_z,
            "coker_iota": len(self.c1) - im_i,
            "h_middle": len(self.c2) - im_i - im_z,
        }


def _embed(v, slot, n, b):
    z = [LaurentPoly.zero(b)] * n
    out = []
    for s in range(3):
        out += list(v) if s == slot else z
    return out


def build_dcomplex(setup, c3_override: Optional[dict] = None) -> DComplex:
    g, b = setup.diagram.genus, setup.nvars
    n = 2 * g
    pairs = (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha"))
    c3, cert, pb = [], {}, {}
    for slot, (p, q) in enumerate(pairs):
        if c3_override and (p, q) in c3_override:
            basis, ok = c3_override[(p, q)], False
        else:
            basis, ok = intersection_basis(setup.P[p], setup.P[q], setup.lifts[p], setup.lifts[q])
        cert[f"{p}-{q}"] = ok
        pb[(p, q)] = basis
        c3 += [_embed(v, slot, n, b) for v in basis]
    c2 = [_embed(v, s, n, b) for s, name in enumerate(NAMES) for v in setup.lifts[name]]
    c1 = [[LaurentPoly.one(b) if i == j else LaurentPoly.zero(b) for i in range(n)] for j in range(n)]
    return DComplex(g, b, c3, c2, c1, cert, pb)


@dataclass
class TorsionReport:
    tau_punctured: Frac
    tau: Frac
    ambiguity: str
    u: Word
    bases: dict
    certified: dict
    factors: dict = field(default_factory=dict)

    def canonical(self) -> Frac:
        return self.tau.canonical()

    def to_json(self) -> dict:
        return {
            "tau": str(self.tau.canonical()),
            "tau_punctured": str(self.tau_punctured.canonical()),
            "ambiguity": self.ambiguity,
            "u": str(self.u),
            "certified": dict(self.certified),
            "bases": {str(k): [[str(x) for x in v] for v in vs] for k, vs in self.bases.items()},
        }


def parse_basis(doc: dict, genus: int, nvars: int) -> tuple:
    """Homology bases {3: [...], 2: [...], 1: [...]} and the word u (or None)
    from a basis document {"h3": [[str]], "h2": ..., "h1": ..., "u": str}."""
    if not isinstance(doc, dict):
        raise BasisError("basis document must be a JSON object")
    extra = set(doc) - {"h1", "h2", "h3", "u"}
    if extra:
        raise BasisError(f"unknown fields: {sorted(extra)}")
    h = {}
    for k in (1, 2, 3):
        vs = doc.get(f"h{k}", [])
        if not isinstance(vs, list):
            raise BasisError(f"h{k} must be an array of vectors")
        out = []
        for v in vs:
            if not isinstance(v, list) or len(v) != 2 * genus:
                raise BasisError(f"h{k}: vectors must have length {2 * genus}")
            try:
                out.append([parse_poly(str(x), nvars) for x in v])
            except ValueError as e:
                raise BasisError(f"h{k}: {e}") from e
        h[k] = out
    u = None
    if "u" in doc:
        try:
            u = parse_word(doc["u"], genus)
        except WordError as e:
            raise BasisError(f"u: {e}") from e
    return h, u


def _check_in(space: Subspace, vecs, what):
    for v in vecs:
        if len(v) != space.n:
            raise BasisError(f"{what}: vector has length {len(v)}, expected {space.n}")
        if not sub_member(space, v):
            raise BasisError(f"{what}: vector is not in the required subspace")


def torsion_X(d: Diagram, phi=None, h: Optional[dict] = None, u: Optional[Word] = None,
              rng: Optional[random.Random] = None, setup=None, c3_override=None) -> TorsionReport:
    """Torsion of X for the homology bases h = {3: [...], 2: [...], 1: [...]} of
    representatives (defaults: the twisted report's bases)."""
    S = setup or twisted_setup(d, phi)
    g, b = d.genus, S.nvars
    n = 2 * g
    if h is None:
        tw = homology_twisted(d, setup=S)
        h = {k: list(v) for k, v in tw.bases.items()}
    h = {k: [list(v) for v in h.get(k, [])] for k in (1, 2, 3)}
    if u is None:
        k = next(k for k in range(n) if any(S.phi.values[k]))
        f, i = ("x", k + 1) if k < g else ("y", k - g + 1)
        u = Word(((f, i, 1),))
    phi_u = S.phi(u)
    if phi_u == 1:
        raise TrivialPhi(f"phi(u) = 1 for u = {u}")

    Pa, Pb, Pc = (S.P[x] for x in NAMES)
    triple = sub_intersect(sub_intersect(Pa, Pb), Pc)
    _check_in(triple, h[3], "degree 3")
    _check_in(Pa, h[2], "degree 2")
    _check_in(S.Zs, h[1], "degree 1")

    D = build_dcomplex(S, c3_override)
    r = S.r
    h3 = [r + r + r] + [list(v) * 3 for v in h[3]]
    h2 = []
    for a in h[2]:
        xb, xc = decompose_twisted(S, a)
        bv = _lin(xb, S.lifts["beta"], b) if g else []
        cv = _lin(xc, S.lifts["gamma"], b) if g else []
        h2.append(_fr(a, b) + bv + cv)
    h1 = [list(v) for v in h[1]] + [fox_lift(u, S.phi)]

    chains = [
        BasedChain(3, D.c3, D.zeta, h3),
        BasedChain(2, D.c2, D.iota, h2),
        BasedChain(1, D.c1, None, h1),
    ]
    factors: dict = {}
    tp = torsion_of_based_complex(chains, b, rng=rng, details=factors)
    tau = tp / Frac(phi_u - 1)
    amb = PM_MONOMIAL if all(D.certified.values()) else RATIONAL_SCALAR
    return TorsionReport(tp, tau, amb, u, h, D.certified, factors)
