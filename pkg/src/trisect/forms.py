"""Intersection forms of the 4-manifold read off the diagram.

lambda(a, a') = <c, a'>_Sigma where a + b + c = 0 with b in L_beta, c in L_gamma;
the H1 x H3 form is the surface pairing itself.  The twisted versions use the
phi-twisted surface pairing on Fox lifts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import zlinalg as Z
from .diagram import Diagram
from .flinalg import det_f, independent_subset, solve_f
from .homology import HomologyReport, TwistedReport, homology_twisted, homology_z, twisted_setup
from .ring import Frac, LaurentPoly
from .surface import build_surface_model, j_pairing, twisted_pairing


class FormError(ArithmeticError):
    pass


@dataclass
class FormReport:
    kind: str
    basis: list
    matrix: list
    signature: Optional[int] = None
    parity: Optional[str] = None
    unimodular: Optional[bool] = None
    nondegenerate: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.matrix)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "basis": [[str(x) for x in v] for v in self.basis],
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }
        for k in ("signature", "parity", "unimodular", "nondegenerate"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


def congruence_diagonalize(M: list) -> list:
    """Diagonal entries of a rational symmetric matrix after congruence."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    diag = []
    k = 0
    while k < n:
        if A[k][k] == 0:
            # find a nonzero diagonal below, or fix one with a row/col addition
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    k += 1
                    continue
                # replace e_k by e_k + e_j: the new diagonal entry is 2 A[k][j] != 0
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] = row[k] + row[j]
        p = A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
                for row in A:
                    row[i] = row[i] - f * row[k]
        diag.append(p)
        k += 1
    return diag


def signature(M: list) -> int:
    d = congruence_diagonalize(M)
    return sum(1 for x in d if x > 0) - sum(1 for x in d if x < 0)


def is_symmetric(M) -> bool:
    return all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))


# --- untwisted --------------------------------------------------------------


def wall_matrix(model, gens, decs) -> list:
    return [[j_pairing(model, c, a2) for a2 in gens] for (_, c) in decs]


def wall_form(d: Diagram, hz: Optional[HomologyReport] = None) -> FormReport:
    hz = hz or homology_z(d)
    model = build_surface_model(d.genus, d.relator)
    h2 = hz.degrees[2]
    nt = len(h2.torsion)
    gens = h2.generators[nt:]
    decs = h2.decompositions[nt:]
    M = wall_matrix(model, gens, decs)
    if not is_symmetric(M):
        raise FormError("Wall form is not symmetric")
    det = Z.det_z(M)
    par = "even" if all(M[i][i] % 2 == 0 for i in range(len(M))) else "odd"
    return FormReport("wall", gens, M, signature=signature(M), parity=par, unimodular=abs(det) == 1,
                      nondegenerate=det != 0, extra={"decompositions": decs})


def h1h3_form(d: Diagram, hz: Optional[HomologyReport] = None) -> FormReport:
    hz = hz or homology_z(d)
    model = build_surface_model(d.genus, d.relator)
    h1 = hz.degrees[1]
    u_gens = h1.generators[len(h1.torsion):]
    v_gens = hz.degrees[3].generators
    M = [[j_pairing(model, u, v) for v in v_gens] for u in u_gens]
    det = Z.det_z(M)
    if abs(det) != 1:
        raise FormError(f"H1 x H3 pairing is not perfect (det {det})")
    return FormReport("h1h3", u_gens, M, unimodular=True, nondegenerate=True, extra={"h3": v_gens})


# --- twisted ----------------------------------------------------------------


def decompose_twisted(setup, a) -> tuple:
    """Coefficients (xb, xc) over F, on the beta and gamma lifts, with
    a + sum xb*beta + sum xc*gamma = 0."""
    g = setup.diagram.genus
    cols = setup.lifts["beta"] + setup.lifts["gamma"]
    idx = independent_subset(cols)
    sol = solve_f([cols[i] for i in idx], [-x for x in a], setup.nvars)
    full = [Frac.from_int(0, setup.nvars)] * len(cols)
    for i, x in zip(idx, sol):
        full[i] = x
    return full[:g], full[g:]


def _pair_frac(model, coeffs, vecs, v) -> Frac:
    b = model.nvars
    tot = Frac.from_int(0, b)
    for x, w in zip(coeffs, vecs):
        if x:
            tot = tot + x * Frac(twisted_pairing(model, w, v))
    return tot


def wall_matrix_twisted(setup, gens, decs) -> list:
    gam = setup.lifts["gamma"]
    return [[_pair_frac(setup.model, xc, gam, a2) for a2 in gens] for (_, xc) in decs]


def is_hermitian(M) -> bool:
    return all(M[i][j] == M[j][i].involute() for i in range(len(M)) for j in range(len(M)))


def wall_form_twisted(d: Diagram, phi=None, tw: Optional[TwistedReport] = None, basis=None) -> FormReport:
    tw = tw or homology_twisted(d, phi)
    S = tw.setup
    gens = basis if basis is not None else tw.bases[2]
    decs = [decompose_twisted(S, a) for a in gens]
    M = wall_matrix_twisted(S, gens, decs)
    if not is_hermitian(M):
        raise FormError("twisted Wall form is not hermitian")
    nd = bool(det_f(M, S.nvars)) if M else True
    if not nd:
        raise FormError("twisted Wall form is degenerate")
    return FormReport("wall-twisted", gens, M, nondegenerate=nd, extra={"decompositions": decs})


def h1h3_twisted(d: Diagram, phi=None, tw: Optional[TwistedReport] = None, h1=None, h3=None) -> FormReport:
    tw = tw or homology_twisted(d, phi)
    S = tw.setup
    us = h1 if h1 is not None else tw.bases[1]
    vs = h3 if h3 is not None else tw.bases[3]
    M = [[Frac(twisted_pairing(S.model, u, v)) for v in vs] for u in us]
    nd = bool(det_f(M, S.nvars)) if M else True
    if not nd:
        raise FormError("twisted H1 x H3 pairing is degenerate")
    return FormReport("h1h3-twisted", us, M, nondegenerate=nd, extra={"h3": vs})
