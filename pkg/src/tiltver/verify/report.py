"""Report models and their text / JSON serialization."""

from __future__ import annotations

import enum
import json
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter

from ..config import CaseConfig
from ..rootdata import Weight, format_weight


class Verdict(str, enum.Enum):
    VERIFIED = "VERIFIED"
    CONSISTENT = "CONSISTENT"
    REFUTED_NECESSARY = "REFUTED-NECESSARY"
    UNKNOWN = "UNKNOWN"


def keyed(expansion: dict[Weight, int]) -> dict[str, int]:
    return {format_weight(w): c for w, c in expansion.items()}


class CaseEcho(BaseModel):
    type_label: str
    p: int
    r: int = 1
    weights: Optional[list[str]] = None
    decomp_tables: list[str] = Field(default_factory=list)
    tilting_tables: list[str] = Field(default_factory=list)
    builtin_overrides: bool = True

    @classmethod
    def from_config(cls, cfg: CaseConfig) -> "CaseEcho":
        return cls(
            type_label=cfg.type_label,
            p=cfg.p,
            r=cfg.r,
            weights=[format_weight(w) for w in cfg.weights] if cfg.weights else None,
            decomp_tables=[str(path) for path in cfg.decomp_tables],
            tilting_tables=[str(path) for path in cfg.tilting_tables],
            builtin_overrides=cfg.builtin_overrides,
        )


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class Comparison(BaseModel):
    mu: str
    a: int
    b: Optional[int] = None
    equal: Optional[bool] = None


class WeightEntry(BaseModel):
    weight: str
    qhat_weight: str
    verdict: Verdict
    a: dict[str, int] = Field(default_factory=dict)
    b: Optional[dict[str, int]] = None
    b_provenance: Optional[str] = None
    b_strategy: Optional[str] = None
    index_set: list[str] = Field(default_factory=list)
    comparisons: list[Comparison] = Field(default_factory=list)
    checks: list[CheckModel] = Field(default_factory=list)
    diagnostics: list[str] = Field(default_factory=list)


class Summary(BaseModel):
    counts: dict[str, int] = Field(default_factory=dict)
    coxeter_number: int
    generic_bound: int
    generic_bound_covered: bool
    convention: str
    discrepancies: int = 0


class TmcReport(BaseModel):
    kind: Literal["tmc"] = "tmc"
    config: CaseEcho
    entries: list[WeightEntry] = Field(default_factory=list)
    summary: Optional[Summary] = None
    notes: list[str] = Field(default_factory=list)

    def verdicts(self) -> dict[str, Verdict]:
        return {entry.weight: entry.verdict for entry in self.entries}


class LeviRow(BaseModel):
    weight: str
    mu: str
    a: Optional[int] = None
    a_levi: Optional[int] = None
    b_levi: Optional[int] = None
    equal: Optional[bool] = None
    error: Optional[str] = None


class LeviReport(BaseModel):
    kind: Literal["levi"] = "levi"
    config: CaseEcho
    levi: list[int] = Field(default_factory=list)  # 1-based simple root indices
    rows: list[LeviRow] = Field(default_factory=list)
    levi_tmc_verified: bool = False
    violations: int = 0
    notes: list[str] = Field(default_factory=list)


class Finding(BaseModel):
    weight: str
    mu: str
    issue: str
    detail: str = ""


class MinimalCounterexampleReport(BaseModel):
    kind: Literal["mincx"] = "mincx"
    config: CaseEcho
    discrepancies: int = 0
    findings: list[Finding] = Field(default_factory=list)


class Ph2Row(BaseModel):
    weight: str
    alpha0_pairing: int
    verdict: Verdict
    b_available: bool
    equal: Optional[bool] = None


class Ph2Report(BaseModel):
    kind: Literal["ph2"] = "ph2"
    config: CaseEcho
    expected_p: int
    region_bound: int
    rows: list[Ph2Row] = Field(default_factory=list)
    violations: int = 0
    coverage: float = 0.0
    notes: list[str] = Field(default_factory=list)


class ExtCandidateModel(BaseModel):
    gamma: str
    witness: Optional[int] = None  # 1-based
    satisfies_and: bool
    satisfies_bnp: bool
    alpha0_pairing: int
    bound_ok: bool
    in_lowest_alcove: bool
    combined_ok: Optional[bool] = None
    resolution: str


class ExtReport(BaseModel):
    kind: Literal["ext"] = "ext"
    config: CaseEcho
    coxeter_number: int
    bound: int
    bound_unsupported: bool
    pairs: int
    region: list[str] = Field(default_factory=list)
    candidates: list[ExtCandidateModel] = Field(default_factory=list)
    complete_reducibility: bool
    notes: list[str] = Field(default_factory=list)


class CharReport(BaseModel):
    kind: Literal["char"] = "char"
    config: CaseEcho
    weight: str
    char_kind: str
    dimension: int
    terms: dict[str, int] = Field(default_factory=dict)
    weyl_expansion: Optional[dict[str, int]] = None
    provenance: Optional[str] = None


Report = Annotated[
    Union[TmcReport, LeviReport, MinimalCounterexampleReport, Ph2Report, ExtReport, CharReport],
    Field(discriminator="kind"),
]
_ADAPTER: TypeAdapter = TypeAdapter(Report)


def _render_tmc(report: TmcReport) -> list[str]:
    lines = []
    for entry in report.entries:
        b = "-" if entry.b is None else ", ".join(f"{k}:{v}" for k, v in entry.b.items())
        a = ", ".join(f"{k}:{v}" for k, v in entry.a.items()) or "-"
        source = f" [{entry.b_provenance}]" if entry.b_provenance else ""
        lines.append(f"lambda={entry.weight:<8} Q({entry.qhat_weight})  {entry.verdict.value}")
        lines.append(f"    a: {a}")
        lines.append(f"    b: {b}{source}")
        for check in entry.checks:
            if not check.passed:
                lines.append(f"    check {check.name} FAILED {check.detail}".rstrip())
        for note in entry.diagnostics:
            lines.append(f"    note: {note}")
    if report.summary is not None:
        s = report.summary
        counts = ", ".join(f"{k}={v}" for k, v in sorted(s.counts.items()))
        lines.append("")
        lines.append(f"verdicts: {counts or 'none'}")
        lines.append(
            f"h={s.coxeter_number}  2h-4={s.generic_bound}  generic bound covers p: "
            f"{'yes' if s.generic_bound_covered else 'no'}"
        )
        lines.append(f"convention: {s.convention}")
    return lines


def _render_levi(report: LeviReport) -> list[str]:
    lines = [f"J = {{{', '.join(str(i) for i in report.levi)}}}"]
    for row in report.rows:
        if row.error:
            lines.append(f"lambda={row.weight} mu={row.mu}  error: {row.error}")
            continue
        mark = "ok" if row.equal else "MISMATCH"
        lines.append(
            f"lambda={row.weight:<8} mu={row.mu:<8} a={row.a} a_J={row.a_levi} b_J={row.b_levi}  {mark}"
        )
    lines.append(f"violations: {report.violations}")
    return lines


def _render_mincx(report: MinimalCounterexampleReport) -> list[str]:
    lines = [f"discrepancies: {report.discrepancies}"]
    for finding in report.findings:
        lines.append(f"lambda={finding.weight} mu={finding.mu}  {finding.issue} {finding.detail}".rstrip())
    if not report.findings:
        lines.append("no findings")
    return lines


def _render_ph2(report: Ph2Report) -> list[str]:
    lines = [f"region: <lambda, alpha_0^vee> <= {report.region_bound}"]
    for row in report.rows:
        status = "-" if row.equal is None else ("a=b" if row.equal else "a!=b")
        lines.append(f"lambda={row.weight:<8} pairing={row.alpha0_pairing:<3} {row.verdict.value:<18} {status}")
    lines.append(f"violations: {report.violations}  coverage: {report.coverage:.2f}")
    return lines


def _render_ext(report: ExtReport) -> list[str]:
    lines = [
        f"h={report.coxeter_number}  bound={report.bound}  pairs={report.pairs}",
        f"bound region: {'; '.join(report.region)}",
    ]
    for c in report.candidates:
        witness = f"alpha_{c.witness}" if c.witness else "-"
        lines.append(
            f"gamma={c.gamma:<8} <gamma,alpha_0^vee>={c.alpha0_pairing:<3} witness={witness:<8} "
            f"bound={'ok' if c.bound_ok else 'VIOLATED'}  {c.resolution}"
        )
    lines.append(f"complete reducibility: {'yes' if report.complete_reducibility else 'not established'}")
    return lines


def _render_char(report: CharReport) -> list[str]:
    lines = [f"{report.char_kind}({report.weight}): dimension {report.dimension}"]
    if report.provenance:
        lines.append(f"provenance: {report.provenance}")
    if report.weyl_expansion is not None:
        lines.append("chi-expansion: " + " + ".join(f"{c}*chi({w})" for w, c in report.weyl_expansion.items()))
    lines.extend(f"{c}: {w}" for w, c in report.terms.items())
    return lines


_RENDERERS = {
    "tmc": _render_tmc,
    "levi": _render_levi,
    "mincx": _render_mincx,
    "ph2": _render_ph2,
    "ext": _render_ext,
    "char": _render_char,
}


def emit_report(report: BaseModel, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    config = report.config  # type: ignore[attr-defined]
    kind = report.kind  # type: ignore[attr-defined]
    header = f"tiltver {kind}: {config.type_label} p={config.p}"
    body = _RENDERERS[kind](report)
    notes = [f"note: {n}" for n in getattr(report, "notes", [])]
    return "\n".join([header, *body, *notes]) + "\n"


def parse_report(text: str):
    return _ADAPTER.validate_json(text)
