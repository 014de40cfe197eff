"""One-vertex polygon model of a closed orientable surface.

The surface is the 4g-gon with boundary word `relator`.  All its vertices are
identified to one point, and intersections of based loops are counted in a
small disc around that point.  The boundary of the disc is the vertex link: a
circle through the 4g edge-ends (g, out) and (g, in), where (g, out) is the
end at which the 1-cell g leaves the vertex.

A chain sum_g u_g e_g in the phi-cover has link divisor
    sum_g u_g ([g_out] - phi(g) [g_in]).
Two divisors are paired through the kernel T(p, q) = [pos(q) > pos(p)] on the
link circle cut at a fixed point.  For cycles the divisors have degree zero and
the cut drops out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ring import LaurentPoly
from .word import PhiMap, Word, fox_lift, gen_index, gen_name

OUT, IN = 0, 1

# Orientation constant: pins <x1, y1> = +1 on the standard torus x1 y1 X1 Y1.
ORIENTATION = -1


class RelatorError(ValueError):
    """The relator does not describe a closed orientable one-vertex surface."""


class NotACycle(ValueError):
    pass


def _node(k: int, end: int) -> int:
    return 2 * k + end


def _edge_ends(letter, genus):
    """(start, end) edge-ends of a polygon edge labelled by letter."""
    f, i, e = letter
    k = gen_index(f, i, genus)
    if e > 0:
        return _node(k, OUT), _node(k, IN)
    return _node(k, IN), _node(k, OUT)


def check_relator(relator: Word, genus: int) -> list[str]:
    """List of problems with the relator; empty when it is valid."""
    problems = []
    n = 2 * genus
    seen = {}
    for f, i, e in relator.letters:
        if not 1 <= i <= genus:
            problems.append(f"letter {f}{i} out of range")
            continue
        seen.setdefault(gen_index(f, i, genus), []).append(e)
    for k in range(n):
        occ = seen.get(k, [])
        name = gen_name(k, genus)
        if len(occ) != 2:
            problems.append(f"occurrence: {name} occurs {len(occ)} times, expected 2")
        elif occ[0] == occ[1]:
            problems.append(f"orientability: {name} occurs twice with the same sign")
    if problems:
        return problems
    if genus and len(vertex_cycles(relator, genus)) != 1:
        problems.append("vertex: the edge identifications yield more than one vertex")
    return problems


def _successor(relator: Word, genus: int) -> dict:
    """Map node -> next node along the corner arcs of the polygon."""
    L = relator.letters
    N = len(L)
    succ = {}
    for i in range(N):
        prev_end = _edge_ends(L[i - 1], genus)[1]
        start = _edge_ends(L[i], genus)[0]
        succ[prev_end] = start
    return succ


def vertex_cycles(relator: Word, genus: int) -> list:
    succ = _successor(relator, genus)
    left = set(succ)
    cycles = []
    while left:
        start = min(left)
        cyc = [start]
        left.discard(start)
        x = succ[start]
        while x != start:
            cyc.append(x)
            left.discard(x)
            x = succ[x]
        cycles.append(cyc)
    return cycles


def _make_T(link: Sequence[int], ties: str = "out-first"):
    pos = {p: i for i, p in enumerate(link)}
    n = len(link)
    T = [[0] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            if p == q:
                is_out = p % 2 == OUT
                T[p][q] = int(is_out) if ties == "out-first" else int(not is_out)
            else:
                T[p][q] = int(pos[q] > pos[p])
    return T


@dataclass
class SurfaceModel:
    genus: int
    relator: Word
    phi: PhiMap
    link: list
    J: list
    B: list
    ties: str = "out-first"
    T: list = field(default_factory=list, repr=False)

    @property
    def nvars(self) -> int:
        return self.phi.rank

    def divisor(self, u: Sequence[LaurentPoly]) -> list:
        """Link divisor of a chain, as a list indexed by node."""
        b = self.nvars
        D = [LaurentPoly.zero(b) for _ in range(4 * self.genus)]
        for k, c in enumerate(u):
            if c:
                D[_node(k, OUT)] = D[_node(k, OUT)] + c
                D[_node(k, IN)] = D[_node(k, IN)] - c * self.phi.of_gen(k)
        return D

    def is_cycle(self, u: Sequence[LaurentPoly]) -> bool:
        b = self.nvars
        tot = LaurentPoly.zero(b)
        for k, c in enumerate(u):
            if c:
                tot = tot + c * (self.phi.of_gen(k) - 1)
        return tot.is_zero()


def build_surface_model(genus: int, relator: Word, phi: Optional[PhiMap] = None, ties: str = "out-first",
                        cut: int = 0) -> SurfaceModel:
    """Validate the relator and assemble the link order and the pairing matrices.

    `cut` rotates the point where the link circle is cut open and `ties` picks the
    order of coincident edge-ends; neither affects pairings of cycles.
    """
    if phi is None:
        phi = PhiMap.trivial(genus)
    problems = check_relator(relator, genus)
    if problems:
        raise RelatorError("; ".join(problems))
    n = 2 * genus
    b = phi.rank
    link = vertex_cycles(relator, genus)[0] if genus else []
    if link:
        c = cut % len(link)
        link = link[c:] + link[:c]
    T = _make_T(link, ties)
    eps = ORIENTATION

    J = [[0] * n for _ in range(n)]
    for g in range(n):
        go, gi = _node(g, OUT), _node(g, IN)
        for h in range(n):
            ho, hi = _node(h, OUT), _node(h, IN)
            J[g][h] = eps * (T[go][ho] - T[go][hi] - T[gi][ho] + T[gi][hi])

    B = [[LaurentPoly.zero(b) for _ in range(n)] for _ in range(n)]
    for g in range(n):
        go, gi = _node(g, OUT), _node(g, IN)
        pg = phi.of_gen(g)
        for h in range(n):
            ho, hi = _node(h, OUT), _node(h, IN)
            ph = phi.of_gen(h).involute()
            val = (LaurentPoly.const(T[go][ho], b) - ph * T[go][hi] - pg * T[gi][ho]
                   + pg * ph * T[gi][hi])
            B[g][h] = val * eps
    return SurfaceModel(genus, relator, phi, link, J, B, ties, T)


def relator_lift(model: SurfaceModel) -> list:
    return fox_lift(model.relator, model.phi)


def j_pairing(model: SurfaceModel, u: Sequence[int], v: Sequence[int]) -> int:
    """Integral intersection pairing u^T J v."""
    return sum(u[i] * model.J[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


def twisted_pairing(model: SurfaceModel, u: Sequence[LaurentPoly], v: Sequence[LaurentPoly],
                    check: bool = True) -> LaurentPoly:
    """u^T B conj(v), sesquilinear in (u, v)."""
    if check:
        if not model.is_cycle(u):
            raise NotACycle("first argument is not a cycle")
        if not model.is_cycle(v):
            raise NotACycle("second argument is not a cycle")
    b = model.nvars
    tot = LaurentPoly.zero(b)
    vb = [x.involute() for x in v]
    for i, a in enumerate(u):
        if a.is_zero():
            continue
        row = LaurentPoly.zero(b)
        for j, c in enumerate(vb):
            if c:
                row = row + model.B[i][j] * c
        tot = tot + a * row
    return tot


def _strands(model: SurfaceModel, w: Word):
    """(arrive, depart, weight exponents) for the strands of a loop at the vertex."""
    g = model.genus
    L = w.letters
    m = len(L)
    out = []
    P = [0] * model.nvars
    for i in range(m):
        f, idx, e = L[i]
        k = gen_index(f, idx, g)
        P = [p + e * x for p, x in zip(P, model.phi.values[k])]
        arrive = _node(k, IN) if e > 0 else _node(k, OUT)
        f2, idx2, e2 = L[(i + 1) % m]
        k2 = gen_index(f2, idx2, g)
        depart = _node(k2, OUT) if e2 > 0 else _node(k2, IN)
        out.append((arrive, depart, tuple(P)))
    return out


def strand_pairing(model: SurfaceModel, a: Word, b: Word) -> LaurentPoly:
    """Vertex-local count of crossings of two based loops, weighted in Lambda."""
    nv = model.nvars
    T = model.T
    tot: dict = {}
    for af, at, wa in _strands(model, a):
        for bf, bt, wb in _strands(model, b):
            s = T[at][bt] - T[at][bf] - T[af][bt] + T[af][bf]
            if s:
                key = tuple(x - y for x, y in zip(wa, wb))
                tot[key] = tot.get(key, 0) + s
    return LaurentPoly(tot, nv) * ORIENTATION
