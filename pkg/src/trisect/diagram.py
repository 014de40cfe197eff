"""Trisection diagrams: data model, homological validation, and the map phi."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from . import zlinalg as Z
from .surface import build_surface_model, check_relator, j_pairing, RelatorError
from .word import PhiMap, Word, WordError, abelianize, default_relator, gen_name, parse_word

SYSTEMS = ("alpha", "beta", "gamma")
PAIRS = (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha"))


class DiagramError(ValueError):
    """The diagram document is malformed."""


class InvalidDiagram(ValueError):
    """The diagram fails a hard validation check."""


@dataclass
class Diagram:
    genus: int
    relator: Word
    alpha: list
    beta: list
    gamma: list
    phi: Optional[PhiMap] = None  # None means canonical
    source: dict = field(default_factory=dict, repr=False)

    def system(self, name: str) -> list:
        return getattr(self, name)

    def systems(self):
        return [self.alpha, self.beta, self.gamma]

    def curves(self) -> list:
        return self.alpha + self.beta + self.gamma

    def classes(self, name: str) -> list:
        return [abelianize(w, self.genus) for w in self.system(name)]

    def to_json(self) -> dict:
        doc = {
            "genus": self.genus,
            "relator": str(self.relator),
            "alpha": [str(w) for w in self.alpha],
            "beta": [str(w) for w in self.beta],
            "gamma": [str(w) for w in self.gamma],
        }
        if self.phi is None:
            doc["phi"] = {"mode": "canonical"}
        else:
            doc["phi"] = {"mode": "explicit", "rank": self.phi.rank, "values": self.phi.to_dict()}
        return doc

    def digest(self) -> str:
        s = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(s.encode()).hexdigest()

    def permuted(self, order) -> "Diagram":
        """Same surface with the curve systems reordered, e.g. order=(1, 2, 0)."""
        s = self.systems()
        return Diagram(self.genus, self.relator, list(s[order[0]]), list(s[order[1]]), list(s[order[2]]),
                       self.phi)


_KEYS = {"genus", "relator", "alpha", "beta", "gamma", "phi"}


def parse_diagram(text: str) -> Diagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError(f"not valid JSON: {e}") from e
    return diagram_from_dict(doc)


def diagram_from_dict(doc) -> Diagram:
    if not isinstance(doc, dict):
        raise DiagramError("diagram document must be a JSON object")
    extra = set(doc) - _KEYS
    if extra:
        raise DiagramError(f"unknown fields: {sorted(extra)}")
    g = doc.get("genus")
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise DiagramError("genus must be a non-negative integer")
    try:
        rel = parse_word(doc["relator"], g) if "relator" in doc else default_relator(g)
        systems = []
        for name in SYSTEMS:
            ws = doc.get(name)
            if not isinstance(ws, list) or not all(isinstance(w, str) for w in ws):
                raise DiagramError(f"{name} must be an array of word strings")
            if len(ws) != g:
                raise DiagramError(f"{name} has {len(ws)} curves, expected {g}")
            systems.append([parse_word(w, g) for w in ws])
    except WordError as e:
        raise DiagramError(str(e)) from e
    phi = None
    phi_doc = doc.get("phi", {"mode": "canonical"})
    if not isinstance(phi_doc, dict) or phi_doc.get("mode") not in ("canonical", "explicit"):
        raise DiagramError("phi must be {'mode': 'canonical'} or an explicit map")
    if phi_doc["mode"] == "explicit":
        if set(phi_doc) - {"mode", "rank", "values"}:
            raise DiagramError("unknown fields in phi")
        b = phi_doc.get("rank")
        vals = phi_doc.get("values", {})
        if not isinstance(b, int) or b < 0 or not isinstance(vals, dict):
            raise DiagramError("explicit phi needs an integer rank and a values map")
        for v in vals.values():
            if not isinstance(v, list) or len(v) != b or not all(isinstance(x, int) for x in v):
                raise DiagramError(f"phi values must be integer vectors of length {b}")
        try:
            phi = PhiMap.from_dict(g, b, vals)
        except WordError as e:
            raise DiagramError(str(e)) from e
    elif set(phi_doc) != {"mode"}:
        raise DiagramError("unknown fields in phi")
    return Diagram(g, rel, *systems, phi=phi, source=doc)


# --- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    relator: list  # problems with the relator, empty if fine
    lagrangian: dict  # system -> (ok, reason)
    heegaard: dict  # "alpha-beta" -> (ok, k or None, reason)
    phi_kills_curves: tuple  # (ok, reason)
    warnings: list

    @property
    def ok(self) -> bool:
        return (not self.relator and all(v[0] for v in self.lagrangian.values())
                and all(v[0] for v in self.heegaard.values()) and self.phi_kills_curves[0])

    def failures(self) -> list:
        out = [f"relator: {p}" for p in self.relator]
        out += [f"lagrangian({k}): {v[1]}" for k, v in self.lagrangian.items() if not v[0]]
        out += [f"heegaard({k}): {v[2]}" for k, v in self.heegaard.items() if not v[0]]
        if not self.phi_kills_curves[0]:
            out.append(f"phi-kills-curves: {self.phi_kills_curves[1]}")
        return out

    def k_values(self) -> list:
        return [v[1] for v in self.heegaard.values()]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "relator": {"ok": not self.relator, "problems": list(self.relator)},
            "lagrangian": {k: {"ok": v[0], "reason": v[1]} for k, v in self.lagrangian.items()},
            "heegaard": {k: {"ok": v[0], "k": v[1], "reason": v[2]} for k, v in self.heegaard.items()},
            "phi_kills_curves": {"ok": self.phi_kills_curves[0], "reason": self.phi_kills_curves[1]},
            "warnings": list(self.warnings),
        }


def _lagrangian(classes, J, n) -> tuple:
    g = len(classes)
    for i in range(g):
        for j in range(g):
            s = sum(classes[i][p] * J[p][q] * classes[j][q] for p in range(n) for q in range(n))
            if s:
                return False, f"curves {i + 1} and {j + 1} have intersection number {s}"
    if g == 0:
        return True, ""
    A = Z.from_columns(classes, n)
    free, tors = Z.coker_invariants(A, n, g)
    if n - free < g:
        return False, "classes are not linearly independent"
    if tors:
        return False, f"classes do not span a direct summand (factors {tors})"
    return True, ""


def validate_diagram(d: Diagram) -> ValidationReport:
    g = d.genus
    n = 2 * g
    warnings = ["only homological necessary conditions are checked"]
    rel_problems = check_relator(d.relator, g)
    lag, hee = {}, {}
    if rel_problems:
        J = None
    else:
        J = build_surface_model(g, d.relator).J
    for name in SYSTEMS:
        if J is None:
            lag[name] = (False, "relator invalid")
        else:
            lag[name] = _lagrangian(d.classes(name), J, n)
    for a, b in PAIRS:
        cols = d.classes(a) + d.classes(b)
        key = f"{a}-{b}"
        if n == 0:
            hee[key] = (True, 0, "")
            continue
        free, tors = Z.coker_invariants(Z.from_columns(cols, n), n, len(cols))
        if tors:
            hee[key] = (False, None, f"cokernel has torsion {tors}")
        else:
            hee[key] = (True, free, "")
    ks = {v[1] for v in hee.values() if v[0]}
    if len(ks) > 1:
        warnings.append(f"unbalanced trisection: k values {sorted(ks)}")
    if d.phi is None:
        pk = (True, "canonical")
    else:
        bad = [i for i, w in enumerate(d.curves()) if any(d.phi.exps(w))]
        if bad:
            names = [f"{SYSTEMS[i // g]}{i % g + 1}" for i in bad]
            pk = (False, f"phi is nontrivial on {', '.join(names)}")
        else:
            pk = (True, "")
    return ValidationReport(rel_problems, lag, hee, pk, warnings)


def require_valid(d: Diagram) -> ValidationReport:
    rep = validate_diagram(d)
    if not rep.ok:
        raise InvalidDiagram("; ".join(rep.failures()))
    return rep


# --- phi --------------------------------------------------------------------


def _rank_and_phi(d: Diagram):
    g = d.genus
    n = 2 * g
    cols = [abelianize(w, g) for w in d.curves()]
    if n == 0:
        return 0, []
    A = Z.from_columns(cols, n)
    res = Z.snf(A, n, len(cols))
    r = res.rank
    rows = [res.U[i] for i in range(r, n)]
    rows = Z.hnf_rows(rows, n)
    return len(rows), rows


def canonical_phi(d: Diagram) -> PhiMap:
    """H1(Sigma) -> H1(X)/torsion = Z^b, as monomials on the generators."""
    g = d.genus
    b, rows = _rank_and_phi(d)
    values = [tuple(rows[j][k] for j in range(b)) for k in range(2 * g)]
    phi = PhiMap(g, b, values)
    for w in d.curves():
        assert not any(phi.exps(w)), "canonical phi does not kill a curve"
    return phi


def diagram_phi(d: Diagram) -> PhiMap:
    """The diagram's explicit phi when given, else the canonical one."""
    if d.phi is None:
        return canonical_phi(d)
    for w in d.curves():
        if any(d.phi.exps(w)):
            raise InvalidDiagram(f"phi is nontrivial on curve {w}")
    return d.phi
