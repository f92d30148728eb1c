"""Text and JSON rendering of engine results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import GaussianRational, gq
from .moments.lemma import FreenessReport
from .structure.types import (
    Decomposition,
    TwoProjectionCase,
    TwoProjectionStructure,
    VnDecomposition,
)

__all__ = ["MomentResult", "SimulationSummary", "render_report", "parse_report"]

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass
class SimulationSummary:
    """Measured versus expected values of a Monte Carlo run."""

    title: str
    params: dict
    measured: dict
    expected: dict = field(default_factory=dict)
    passed: bool | None = None

    def to_dict(self) -> dict:
        return {"title": self.title, "params": self.params, "measured": self.measured,
                "expected": self.expected, "passed": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> "SimulationSummary":
        return cls(d["title"], d["params"], d["measured"], d.get("expected", {}), d.get("passed"))


@dataclass
class MomentResult:
    """Exact traces of words, keyed by the word text."""

    values: dict[str, GaussianRational]

    def to_dict(self) -> dict:
        return {"values": {w: str(v) for w, v in self.values.items()}}

    @classmethod
    def from_dict(cls, d: dict) -> "MomentResult":
        return cls({w: gq(v) for w, v in d["values"].items()})


_KINDS = {
    "moments": MomentResult,
    "decomposition": Decomposition,
    "vn_decomposition": VnDecomposition,
    "two_projection": TwoProjectionStructure,
    "freeness": FreenessReport,
    "simulation": SimulationSummary,
}


def _kind(obj) -> str:
    for k, cls in _KINDS.items():
        if isinstance(obj, cls):
            return k
    raise TypeError(f"cannot render {type(obj).__name__}")


def _mat(n: int) -> str:
    return "ℂ" if n == 1 else "𝕄" + str(n).translate(_SUB)


def _w(x: Fraction) -> str:
    return "{" + str(x) + "}"


def _yn(b) -> str:
    return "unknown" if b is None else ("yes" if b else "no")


def _summand_text(s) -> str:
    if s.is_diffuse:
        return f"{s.label or 'D'}^{_w(s.weight)}"
    return ("ℂ" if s.n == 1 else _mat(s.n)) + "^" + _w(s.weight)


def _decomposition_text(d: Decomposition) -> list[str]:
    if d.passthrough is not None:
        body = " ⊕ ".join(_summand_text(s) for s in d.passthrough)
        lines = [f"𝔄 = {body}  (free product with ℂ)"]
        lines.append(f"simple: {_yn(d.factor.simple)}, unique trace: {_yn(d.factor.unique_trace)}")
        lines.extend(f"note: {n}" for n in d.notes)
        return lines
    lines = []
    if not d.plus_blocks and not d.boundary_maps:
        lines.append("𝔄 simple with unique trace")
    else:
        parts = [f"𝔄₀^{_w(d.gamma)}"] + [f"{_mat(b.N)}^{_w(b.gamma)}" for b in d.plus_blocks]
        head = "𝔄 = " + " ⊕ ".join(parts)
        if not d.boundary_maps:
            head += "; 𝔄₀ simple, unique trace"
        lines.append(head)
    if d.boundary_maps:
        quot = " ⊕ ".join(_mat(b.target_size) for b in d.boundary_maps)
        lines.append(f"0 → 𝔄₀₀ → 𝔄₀ → {quot} → 0; 𝔄₀₀ simple, nonunital, unique trace")
    lines.append(f"simple: {_yn(d.factor.simple)}, unique trace: {_yn(d.factor.unique_trace)}")
    lines.append("L+ = " + (", ".join(f"({b.i},{b.j})" for b in d.plus_blocks) or "∅")
                 + "   L0 = " + (", ".join(f"({b.i},{b.j})" for b in d.boundary_maps) or "∅"))
    for b in d.plus_blocks:
        lines.append(f"  block ({b.i},{b.j}): {_mat(b.N)}, weight {b.gamma}, under p{b.i} ∧ q{b.j}")
    for b in d.boundary_maps:
        lines.append(f"  boundary map π({b.i},{b.j}): 𝔄₀ → {_mat(b.target_size)}, "
                     f"π(f p{b.i}) = π(f q{b.j}) = 1")
    wit = ", ".join(f"f {'p' if s == 'left' else 'q'}{i}" for s, i in d.factor.diffuse_witnesses)
    lines.append(f"diffuse abelian subalgebras under: {wit}")
    for c in d.fullness:
        proj = f"f {'p' if c.side == 'left' else 'q'}{c.index}"
        ideal = c.ideal.replace("A0", "𝔄₀").replace("pi(", "π(")
        lines.append(f"  {proj} full in {ideal}")
    if d.case:
        lines.append(f"engine: {d.case}")
    lines.extend(f"note: {n}" for n in d.notes)
    return lines


def _twoproj_text(t: TwoProjectionStructure) -> list[str]:
    a, b = t.support
    if t.case is TwoProjectionCase.DISTINCT:
        body = (f"ℂ^{_w(t.atom_p_not_q)} ⊕ C([{a:.6f}, {b:.6f}], 𝕄₂) ⊕ ℂ^{_w(t.atom_p_and_q)}")
    elif t.case is TwoProjectionCase.EQUAL_ABOVE_HALF:
        body = f"{{f ∈ C([0, {b:.6f}], 𝕄₂) : f(0) diagonal}} ⊕ ℂ^{_w(t.atom_p_and_q)}"
    else:
        body = "{f ∈ C([0, 1], 𝕄₂) : f(0), f(1) diagonal}"
    return [
        f"C*(p, q) = {body}",
        f"alpha = {t.alpha}, beta = {t.beta}, case: {t.case.value}",
        f"atom p ∧ (1-q): {t.atom_p_not_q}",
        f"atom p ∧ q: {t.atom_p_and_q}",
        f"support of the continuous part: [{a:.6f}, {b:.6f}] "
        f"= {t.support_center} ∓ sqrt({t.support_radius_sq})",
    ]


def _vn_text(v: VnDecomposition) -> list[str]:
    if v.passthrough is not None:
        return ["A * B = " + " ⊕ ".join(_summand_text(s) for s in v.passthrough) + "  (free product with ℂ)"]
    parts = [f"{v.factor_tag}^{_w(v.factor_weight)}"] + [f"{_mat(b.N)}^{_w(b.gamma)}" for b in v.plus_blocks]
    return ["A * B = " + " ⊕ ".join(parts), "t is not computed"]


def _freeness_text(r: FreenessReport) -> list[str]:
    lines = [f"{r.label}: {r.summary()}", f"verdict: {'pass' if r.passed else 'FAIL'}"]
    for desc, v in r.failures[:20]:
        lines.append(f"  nonzero: {desc} -> {v}")
    return lines


def _value_text(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_value_text(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_value_text(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _simulation_text(s: SimulationSummary) -> list[str]:
    lines = [s.title, "params: " + ", ".join(f"{k}={v}" for k, v in s.params.items())]
    for k, v in s.measured.items():
        exp = s.expected.get(k)
        lines.append(f"  {k}: {_value_text(v)}" + ("" if exp is None else f"   (expected {_value_text(exp)})"))
    if s.passed is not None:
        lines.append(f"verdict: {'pass' if s.passed else 'FAIL'}")
    return lines


def _moment_text(m: MomentResult) -> list[str]:
    return [f"τ({w}) = {v}" for w, v in m.values.items()]


_TEXT = {
    "moments": _moment_text,
    "decomposition": _decomposition_text,
    "vn_decomposition": _vn_text,
    "two_projection": _twoproj_text,
    "freeness": _freeness_text,
    "simulation": _simulation_text,
}


def render_report(obj, fmt: str = "text") -> str:
    """Render a result as ``"text"`` or ``"json"``.

    JSON output carries a ``kind`` key so that :func:`parse_report` can
    rebuild the object.
    """
    kind = _kind(obj)
    if fmt == "json":
        return json.dumps({"kind": kind, **obj.to_dict()}, ensure_ascii=False, indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(_TEXT[kind](obj))


def parse_report(text: str):
    """Inverse of ``render_report(obj, "json")``."""
    d = json.loads(text)
    kind = d.pop("kind")
    return _KINDS[kind].from_dict(d)
