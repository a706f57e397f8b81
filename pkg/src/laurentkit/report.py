"""Plain-text rendering of certificates, condition reports and term tables."""
from __future__ import annotations

from fractions import Fraction

from .core import NotLaurent


def _table(headers, rows) -> list[str]:
    cells = [[str(c) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in cells)
    return out


def _notes(notes, failure="") -> list[str]:
    out = []
    if failure:
        out.append(f"failure: {failure}")
    out.extend(f"note: {n}" for n in notes)
    return out


def render_cyclic(cert) -> str:
    lines = [f"cyclic G-sequence, n = {cert.n}", f"F = {cert.F}", ""]
    rows = [(cert.n - 1, "", "", "", cert.F, "")]
    for s in cert.steps:
        rows.append((s.m - 1, s.Q, s.substituted, s.content, s.G, s.power))
    lines += _table(["m", "Q_(m+1)", "substituted", "content", "G_m", "power"], rows)
    lines += ["", f"GEP1a: {cert.gep1a}", f"GEP2a: {cert.gep2a}", f"GEP3a: {cert.gep3a}"]
    lines += _notes(cert.notes, cert.failure)
    lines.append(f"verdict: {cert.verdict} (seed {cert.seed})")
    return "\n".join(lines)


def render_stencil(cert) -> str:
    lines = [f"stencil walk: {cert.name}", f"P_a = {cert.P_a}", ""]
    rows = [(s.label, s.Q, s.G, s.power) for s in cert.essential_steps]
    lines += _table(["class", "Q", "G", "power"], rows)
    idle = [s.label for s in cert.steps if not s.essential]
    if idle:
        lines.append(f"unchanged at {len(idle)} further classes: {', '.join(idle)}")
    lines += ["", f"final G = {cert.G0}"]
    lines += [f"{name}: {status}" for name, status in cert.conditions]
    lines += _notes(cert.notes, cert.failure)
    lines.append(f"essential steps: {len(cert.essential_steps)}")
    lines.append(f"verdict: {cert.verdict} (seed {cert.seed})")
    return "\n".join(lines)


def render_homogeneous(report) -> str:
    lines = [f"homogeneous pattern: {report.pattern or 'custom'}", ""]
    rows = []
    for r in report.results:
        pair = ",".join(str(k) for k in r.pair)
        witness = ""
        if r.multiplier is not None:
            witness = f"L = {r.multiplier}, b = {r.power}"
        rows.append((r.condition, pair, r.status, witness or r.detail))
    lines += _table(["condition", "pair", "status", "witness / detail"], rows)
    lines.append("")
    lines += _notes(report.notes)
    lines.append(f"verdict: {report.verdict} (seed {report.seed})")
    return "\n".join(lines)


def render_caterpillar(report) -> str:
    lines = ["caterpillar conditions", ""]
    rows = []
    for r in report.results:
        where = ", ".join(f"{_vertex(u)}-{_vertex(v)} [{k}]" for u, v, k in r.edges)
        witness = f"L = {r.multiplier}, b = {r.power}" if r.multiplier is not None else r.detail
        rows.append((r.condition, where, r.status, witness))
    lines += _table(["condition", "edges", "status", "witness / detail"], rows)
    lines.append(f"verdict: {report.verdict} (seed {report.seed})")
    return "\n".join(lines)


def _vertex(t) -> str:
    return ":".join(str(x) for x in t) if isinstance(t, tuple) else str(t)


def format_index(h) -> str:
    if isinstance(h, int):
        return f"y{h}"
    return "y[" + ",".join(str(x) for x in h) + "]"


def format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def render_sequence(table) -> str:
    """Numeric values on one comma-separated line."""
    return ",".join(format_value(v) for _, v in table.ordered())


def render_terms(table) -> str:
    lines = [f"{table.recurrence} ({table.mode})"]
    if table.bindings:
        lines.append("bindings: " + ", ".join(f"{k} = {v}" for k, v in table.bindings))
    for h, v in table.ordered():
        lines.append(f"{format_index(h)} = {format_value(v)}")
    for h, f in sorted(table.findings.items(), key=lambda kv: str(kv[0])):
        lines.append(f"{format_index(h)}: {_finding(f)}")
    lines += _notes(table.notes)
    return "\n".join(lines)


def _finding(f) -> str:
    if isinstance(f, NotLaurent):
        return f"not Laurent: ({f.numerator}) / ({f.denominator})"
    return str(f)


def render_point(point, word) -> str:
    lines = [f"word {','.join(str(k) for k in word) or '(empty)'}"]
    for k, c in enumerate(point.coords, 1):
        lines.append(f"x{k} -> {c}")
    return "\n".join(lines)


def render_integrality(report) -> str:
    if report.integral:
        return f"integral: all {report.checked} terms are integers"
    return f"not integral: first failure at {format_index(report.first_failure)}"


def render_nonnegativity(report) -> str:
    if report.nonnegative:
        return f"nonnegative: all coefficients of {report.checked} symbolic terms are nonnegative"
    worst = ", ".join(f"{format_index(h)} (min {c})" for h, c in report.violations)
    return f"NOTABLE FINDING: negative coefficients in {worst}"


__all__ = [
    "render_cyclic", "render_stencil", "render_homogeneous", "render_caterpillar",
    "render_terms", "render_sequence", "render_point", "render_integrality",
    "render_nonnegativity", "format_index", "format_value",
]
