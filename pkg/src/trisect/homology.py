"""Homology of the 4-manifold of a trisection diagram.

Integral groups come from the lattices L_a, L_b, L_c in H1(Sigma; Z):
    H1 = H1(Sigma) / (L_a + L_b + L_c)
    H2 = L_a meet (L_b + L_c)  /  (L_a meet L_b) + (L_a meet L_c)
    H3 = L_a meet L_b meet L_c
and the twisted groups from the same formulas for the F-subspaces spanned by
the Fox lifts of the curves inside H1^phi(Sigma; F).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import zlinalg as Z
from .diagram import Diagram, InvalidDiagram, diagram_phi, require_valid
from .flinalg import (Subquotient, Subspace, det_lambda, kernel_lambda, rank_lambda,
                      sub_intersect, sub_member, sub_sum)
from .ring import LaurentPoly, canon, lp_gcd, lp_gcd_many
from .surface import build_surface_model
from .word import PhiMap, abelianize, fox_lift


class TrivialPhi(ValueError):
    """Twisted invariants need a nontrivial coefficient map."""


# --- integral ---------------------------------------------------------------


@dataclass
class DegreeZ:
    rank: int
    torsion: list
    generators: list  # integer vectors in H1(Sigma) (or in L_alpha for degree 2)
    decompositions: list = field(default_factory=list)  # degree 2: (b, c) with a + b + c = 0


@dataclass
class HomologyReport:
    genus: int
    degrees: dict  # 0..4 -> DegreeZ

    def ranks(self) -> list:
        return [self.degrees[i].rank for i in range(5)]

    def to_json(self) -> dict:
        out = {}
        for i in range(5):
            dd = self.degrees[i]
            e = {"rank": dd.rank, "torsion": list(dd.torsion), "generators": [list(v) for v in dd.generators]}
            if dd.decompositions:
                e["decompositions"] = [{"b": list(b), "c": list(c)} for b, c in dd.decompositions]
            out[str(i)] = e
        return out


def _lattice(classes, n):
    return Z.from_columns(classes, n) if classes else []


def _cols(basis):
    return basis


def quotient_lattice(A_cols: list, B_cols: list, n: int):
    """Structure and generators of span(A) / span(B) for B inside A.

    Returns (rank, torsion, generators) with generators integer vectors in Z^n,
    torsion generators first.
    """
    k = len(A_cols)
    if k == 0:
        return 0, [], []
    A = Z.from_columns(A_cols, n)
    coords = [Z.solve_z(A, b, nrows=n, ncols=k) for b in B_cols]
    if coords:
        M = Z.from_columns(coords, k)
        res = Z.snf(M, k, len(coords))
        U = res.U
        diag = [res.D[i][i] if i < len(coords) else 0 for i in range(k)]
    else:
        U = Z.identity(k)
        diag = [0] * k
    Uinv = Z.inverse_unimodular(U)
    gens, tors_gens, tors = [], [], []
    for i in range(k):
        if diag[i] == 1:
            continue
        col = [Uinv[r][i] for r in range(k)]
        v = Z.matvec(A, col)
        if diag[i] == 0:
            gens.append(v)
        else:
            tors.append(diag[i])
            tors_gens.append(v)
    return len(gens), tors, tors_gens + gens


def homology_z(d: Diagram, validate: bool = True) -> HomologyReport:
    if validate:
        require_valid(d)
    g = d.genus
    n = 2 * g
    La, Lb, Lc = (d.classes(s) for s in ("alpha", "beta", "gamma"))
    one = DegreeZ(1, [], [])
    if n == 0:
        zero = DegreeZ(0, [], [])
        return HomologyReport(g, {0: one, 1: zero, 2: DegreeZ(0, [], []), 3: DegreeZ(0, [], []), 4: one})

    # degree 1
    cols = La + Lb + Lc
    A = Z.from_columns(cols, n)
    res = Z.snf(A, n, len(cols))
    Uinv = Z.inverse_unimodular(res.U)
    diag = [res.D[i][i] if i < len(cols) else 0 for i in range(n)]
    tors, tors_g, free_g = [], [], []
    for i in range(n):
        if diag[i] == 1:
            continue
        v = [Uinv[r][i] for r in range(n)]
        if diag[i] == 0:
            free_g.append(v)
        else:
            tors.append(diag[i])
            tors_g.append(v)
    h1 = DegreeZ(len(free_g), tors, tors_g + free_g)

    # degree 3
    ab = Z.lattice_intersect(_lattice(La, n), _lattice(Lb, n), n)
    abc = Z.lattice_intersect(_lattice(ab, n), _lattice(Lc, n), n) if ab else []
    h3 = DegreeZ(len(abc), [], abc)

    # degree 2
    bc = Z.lattice_sum(_lattice(Lb, n), _lattice(Lc, n), n)
    top = Z.lattice_intersect(_lattice(La, n), _lattice(bc, n), n) if bc else []
    ac = Z.lattice_intersect(_lattice(La, n), _lattice(Lc, n), n)
    bottom = (ab or []) + (ac or [])
    r2, t2, gens2 = quotient_lattice(top, bottom, n)
    BC = Z.from_columns(Lb + Lc, n)
    decs = []
    for a in gens2:
        x = Z.solve_z(BC, [-v for v in a], nrows=n, ncols=2 * g)
        b = Z.matvec(Z.from_columns(Lb, n), x[:g])
        c = Z.matvec(Z.from_columns(Lc, n), x[g:])
        assert all(p + q + s == 0 for p, q, s in zip(a, b, c))
        decs.append((b, c))
    h2 = DegreeZ(r2, t2, gens2, decs)
    rep = HomologyReport(g, {0: one, 1: h1, 2: h2, 3: h3, 4: DegreeZ(1, [], [])})
    return rep


# --- twisted ----------------------------------------------------------------


@dataclass
class TwistedSetup:
    """Everything the twisted computations share: the model and the spaces."""
    diagram: Diagram
    phi: PhiMap
    model: object
    r: list
    lifts: dict  # system -> list of Fox lifts
    Zs: Subspace
    R: Subspace
    Q: Subquotient
    P: dict  # system -> preimage subspace (= span of the lifts, contains r)

    @property
    def n(self):
        return 2 * self.diagram.genus

    @property
    def nvars(self):
        return self.phi.rank


def twisted_setup(d: Diagram, phi: Optional[PhiMap] = None, validate: bool = True) -> TwistedSetup:
    if validate:
        require_valid(d)
    if phi is None:
        phi = diagram_phi(d)
    else:
        for w in d.curves():
            if any(phi.exps(w)):
                raise InvalidDiagram(f"phi is nontrivial on curve {w}")
    if phi.is_trivial():
        raise TrivialPhi("twisted invariants need a nontrivial phi (H1(X) has no free part here)")
    g, b = d.genus, phi.rank
    n = 2 * g
    model = build_surface_model(g, d.relator, phi)
    row = [phi.of_gen(k) - 1 for k in range(n)]
    Zs = Subspace(n, b, kernel_lambda([row], n, b))
    r = fox_lift(d.relator, phi)
    R = Subspace(n, b, [r])
    Q = Subquotient(Zs, R)
    lifts, P = {}, {}
    for name in ("alpha", "beta", "gamma"):
        ls = [fox_lift(w, phi) for w in d.system(name)]
        lifts[name] = ls
        S = Subspace(n, b, ls)
        if S.dim != g:
            raise InvalidDiagram(f"lifts of the {name} curves are not independent")
        if not sub_member(S, r):
            raise InvalidDiagram(f"relator lift is not in the span of the {name} lifts")
        for v in ls:
            if not Zs.contains(v):
                raise InvalidDiagram(f"a lifted {name} curve is not a cycle")
        P[name] = S
    return TwistedSetup(d, phi, model, r, lifts, Zs, R, Q, P)


@dataclass
class TwistedReport:
    h: dict  # degree -> dim over F
    bases: dict  # degree -> list of Lambda-vectors (representatives)
    r: list
    phi: PhiMap
    setup: Optional[TwistedSetup] = field(default=None, repr=False)

    def dims(self) -> tuple:
        return self.h[1], self.h[2], self.h[3]

    def to_json(self) -> dict:
        return {
            "dims": {str(k): v for k, v in self.h.items()},
            "bases": {str(k): [[str(x) for x in v] for v in vs] for k, vs in self.bases.items()},
            "relator_class": [str(x) for x in self.r],
            "phi": {"rank": self.phi.rank, "values": self.phi.to_dict()},
        }


def homology_twisted(d: Diagram, phi: Optional[PhiMap] = None, setup: Optional[TwistedSetup] = None) -> TwistedReport:
    S = setup or twisted_setup(d, phi)
    Q = S.Q
    Pa, Pb, Pc = S.P["alpha"], S.P["beta"], S.P["gamma"]
    total = sub_sum(sub_sum(Pa, Pb), Pc)
    pab = sub_intersect(Pa, Pb)
    pac = sub_intersect(Pa, Pc)
    triple = sub_intersect(pab, Pc)
    top = sub_intersect(Pa, sub_sum(Pb, Pc))
    bottom = sub_sum(pab, pac)
    h1 = Q.Zs_dim = S.Zs.dim - total.dim
    h2 = top.dim - bottom.dim
    h3 = triple.dim - S.R.dim
    bases = {
        1: Q.lift_basis(S.Zs, total),
        2: Q.lift_basis(top, bottom),
        3: Q.lift_basis(triple, S.R),
    }
    assert [len(bases[i]) for i in (1, 2, 3)] == [h1, h2, h3]
    return TwistedReport({1: h1, 2: h2, 3: h3}, bases, S.r, S.phi, S)


# --- Alexander polynomial ---------------------------------------------------


@dataclass
class AlexanderResult:
    matrix: list
    rank: int
    delta: LaurentPoly

    def to_json(self) -> dict:
        return {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "rank": self.rank,
            "delta": str(self.delta),
        }


def gcd_of_minors(M: list, k: int, nvars: int) -> LaurentPoly:
    """gcd of all k x k minors, canonical form; stops early once it is a unit."""
    m = len(M)
    n = len(M[0]) if M else 0
    g = LaurentPoly.zero(nvars)
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            sub = [[M[i][j] for j in cols] for i in rows]
            dval = det_lambda(sub, nvars)
            if dval.is_zero():
                continue
            g = canon(dval) if g.is_zero() else lp_gcd(g, dval)
            if g.is_unit():
                return g
    return g


def alexander(d: Diagram, phi: Optional[PhiMap] = None, setup: Optional[TwistedSetup] = None) -> AlexanderResult:
    S = setup or twisted_setup(d, phi)
    b = S.nvars
    M = [list(v) for name in ("alpha", "beta", "gamma") for v in S.lifts[name]]
    rho = rank_lambda(M) if M else 0
    if rho == 0:
        return AlexanderResult(M, 0, LaurentPoly.one(b))
    delta = gcd_of_minors(M, rho, b)
    return AlexanderResult(M, rho, delta)
