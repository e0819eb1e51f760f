"""Sweep drivers and machine-readable reports for the CLI."""

from __future__ import annotations

import csv
import io
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .deformation import DEFAULT_T_VALUES, central_element, certify_fiber, common_levi_match
from .liealg_oracle import build_algebra, parabolic_from_flag
from .partitions import SPLIT_TAGS, LieTypeRank, OrbitLabel, Partition, dual_partition, enumerate_orbits, is_very_even, orbit_dimension, q_parity_count
from .polarizations import (
    FAIL,
    INCONCLUSIVE,
    NO_RESOLUTION,
    PASS,
    PolarizationClass,
    injectivity_table,
    isotropic_flag_types,
    levi_class_of,
    polarization_classes,
    split_in_D,
    verify_theorem,
)

SCHEMA_VERSION = "orbit-resolve-report/1"
FORMATS = ("json", "markdown", "csv")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    type_rank: LieTypeRank
    orbit_filter: Optional[Partition] = None
    orbit_tag: Optional[str] = None
    seed: int = 0
    trials: int = 5
    samples: int = 20
    t_values: tuple[Fraction, ...] = DEFAULT_T_VALUES
    output_format: str = "json"
    q_slack: int = 0

    def __post_init__(self):
        if self.trials < 3:
            raise UsageError("--trials must be at least 3")
        if self.samples < 3:
            raise UsageError("--samples must be at least 3")
        if 0 not in self.t_values or not any(self.t_values):
            raise UsageError("--t-values must contain 0 and at least one nonzero value")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")

    def to_dict(self) -> dict:
        return {
            "type_rank": str(self.type_rank),
            "orbit_filter": None if self.orbit_filter is None else str(self.orbit_filter),
            "orbit_tag": self.orbit_tag,
            "seed": self.seed,
            "trials": self.trials,
            "samples": self.samples,
            "t_values": [str(t) for t in self.t_values],
            "output_format": self.output_format,
            "q_slack": self.q_slack,
        }


@dataclass
class SweepReport:
    command: str
    config: dict
    orbits: list = field(default_factory=list)
    theorem_reports: list = field(default_factory=list)
    injectivity: list = field(default_factory=list)
    fiber_certificates: list = field(default_factory=list)
    levi_matches: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    duration_seconds: Optional[float] = None
    schema_version: str = SCHEMA_VERSION

    @property
    def exit_code(self) -> int:
        if self.summary.get(FAIL, 0) or self.failures:
            return 1
        if self.summary.get(INCONCLUSIVE, 0):
            return 3
        return 0

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["duration_seconds"] is None:
            del d["duration_seconds"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepReport":
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SweepReport":
        return cls.from_dict(json.loads(text))


def _orbits(config: RunConfig) -> list[OrbitLabel]:
    orbits = enumerate_orbits(config.type_rank)
    if config.orbit_filter is not None:
        orbits = [o for o in orbits if o.partition == config.orbit_filter]
        if config.orbit_tag is not None:
            orbits = [o for o in orbits if o.very_even_tag == config.orbit_tag]
        if not orbits:
            raise UsageError(f"{config.orbit_filter} is not a nilpotent orbit of {config.type_rank}")
    return orbits


def cmd_orbits(config: RunConfig) -> SweepReport:
    t = config.type_rank
    rows = [
        {
            "partition": str(o.partition),
            "very_even_tag": o.very_even_tag,
            "dimension": orbit_dimension(t, o.partition),
            "dual_partition": str(dual_partition(o.partition)),
            "q": q_parity_count(o.partition),
        }
        for o in _orbits(config)
    ]
    return SweepReport("orbits", config.to_dict(), orbits=rows, summary={"orbits_checked": len(rows)})


def cmd_verify(config: RunConfig) -> SweepReport:
    t = config.type_rank
    reports = [verify_theorem(o, config.seed, config.trials, config.q_slack) for o in _orbits(config)]
    injectivity = []
    if t.family in ("B", "C"):
        first = 1 if t.family == "B" else 0
        for q in range(first, t.ambient_dim + 1, 2):
            ok, table = injectivity_table(t, q, config.seed, config.trials)
            injectivity.append({
                "q": q,
                "injective": ok,
                "richardson": [{"levi": str(lc), "partition": str(d)} for lc, d in table.items()],
            })
    tally = Counter(r.verdict for r in reports)
    summary = {"orbits_checked": len(reports), **{v: tally.get(v, 0) for v in (PASS, FAIL, NO_RESOLUTION, INCONCLUSIVE)}}
    failures = [
        {"orbit": str(r.orbit), "verdict": r.verdict, "evidence": r.evidence} for r in reports if r.verdict == FAIL
    ]
    failures += [{"injectivity_q": row["q"], "evidence": row["richardson"]} for row in injectivity if not row["injective"]]
    return SweepReport(
        "verify",
        config.to_dict(),
        theorem_reports=[r.to_dict() for r in reports],
        injectivity=injectivity,
        failures=failures,
        summary=summary,
    )


def deformation_classes(t: LieTypeRank) -> list[PolarizationClass]:
    """Every flag type (D aliases included), split D types once per tag."""
    if t.family == "A":
        return polarization_classes(t)
    out = []
    for ft in isotropic_flag_types(t):
        tags = SPLIT_TAGS if t.family == "D" and split_in_D(ft) else (None,)
        out.extend(PolarizationClass(t, ft, tag) for tag in tags)
    return out


def cmd_deform(config: RunConfig) -> SweepReport:
    t = config.type_rank
    alg = build_algebra(t)
    certs, failures, elements = [], [], []
    for pc in deformation_classes(t):
        pd = parabolic_from_flag(alg, pc.flag_type, pc.split_tag)
        ce = central_element(alg, pd, pc.split_tag)
        elements.append((pc, ce))
        for tv in config.t_values:
            cert = certify_fiber(alg, ce, tv, config.samples, config.seed)
            certs.append({"polarization": str(pc), **cert.to_dict()})
            if not cert.passed:
                bad = [k for k in ("bracket_stable", "tangent_full", "charpoly_constant", "dimension_balanced")
                       if not getattr(cert, k) and not (k == "tangent_full" and cert.t == 0)]
                failures.append({"polarization": str(pc), "t": str(cert.t), "checks": bad})
    matches = []
    for (pa, ca), (pb, cb) in combinations(elements, 2):
        if levi_class_of(t, pa.flag_type) != levi_class_of(t, pb.flag_type):
            continue
        ok = common_levi_match(ca, cb)
        matches.append({"first": str(pa), "second": str(pb), "levi": str(levi_class_of(t, pa.flag_type)), "match": ok})
        if not ok:
            failures.append({"levi_match": [str(pa), str(pb)]})
    passed = sum(1 for c in certs if c["passed"])
    summary = {
        "parabolics_checked": len(elements),
        "certificates": len(certs),
        "certificates_passed": passed,
        "levi_matches": len(matches),
        PASS: passed,
        FAIL: len(certs) - passed,
    }
    return SweepReport(
        "deform", config.to_dict(), fiber_certificates=certs, levi_matches=matches, failures=failures, summary=summary
    )


COMMANDS = {"orbits": cmd_orbits, "verify": cmd_verify, "deform": cmd_deform}


def run(command: str, config: RunConfig, timing: bool = False) -> SweepReport:
    start = time.perf_counter()
    report = COMMANDS[command](config)
    if timing:
        report.duration_seconds = round(time.perf_counter() - start, 3)
    return report


# -- emitters -------------------------------------------------------------


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["_(none)_"]
    keys = list(rows[0])
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r[k]) for k in keys) + " |")
    return lines


def _cell(v) -> str:
    if isinstance(v, list):
        return ", ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def _flat_rows(report: SweepReport) -> list[dict]:
    if report.command == "orbits":
        return report.orbits
    if report.command == "verify":
        return [
            {
                "orbit": r["orbit"]["partition"] + (f"#{r['orbit']['very_even_tag']}" if r["orbit"]["very_even_tag"] else ""),
                "verdict": r["verdict"],
                "resolution_polarizations": r["resolution_polarizations"],
                "richardson_polarizations": r["richardson_polarizations"],
                "levi_classes": [lc["levi"]["label"] for lc in r["levi_classes"]],
                "d_iso_pairs": ["~".join(p) for p in r["d_iso_pairs"]],
            }
            for r in report.theorem_reports
        ]
    return report.fiber_certificates


def to_markdown(report: SweepReport) -> str:
    cfg = report.config
    lines = [f"# {report.command} {cfg['type_rank']}", "", f"schema `{report.schema_version}`, seed {cfg['seed']}", ""]
    lines += ["## Summary", ""] + _table([report.summary]) + [""]
    lines += ["## Results", ""] + _table(_flat_rows(report)) + [""]
    if report.injectivity:
        rows = [{"q": r["q"], "injective": r["injective"],
                 "richardson": [f"{x['levi']}->{x['partition']}" for x in r["richardson"]]} for r in report.injectivity]
        lines += ["## Spaltenstein injectivity", ""] + _table(rows) + [""]
    if report.levi_matches:
        lines += ["## Common Levi matches", ""] + _table(report.levi_matches) + [""]
    if report.failures:
        lines += ["## Failures", ""] + [f"- `{json.dumps(f, sort_keys=True)}`" for f in report.failures] + [""]
    if report.duration_seconds is not None:
        lines.append(f"duration: {report.duration_seconds}s")
    return "\n".join(lines) + "\n"


def to_csv(report: SweepReport) -> str:
    rows = _flat_rows(report)
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(v) for k, v in r.items()})
    return buf.getvalue()


def render(report: SweepReport, fmt: str) -> str:
    return {"json": SweepReport.to_json, "markdown": to_markdown, "csv": to_csv}[fmt](report)
