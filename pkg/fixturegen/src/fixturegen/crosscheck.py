"""Differential check: the main CLI's output against CAS-derived references.

Runs the `primes` and `enumerate` verbs through a subprocess for every shipped
fixture with a reference bundle, compares line by line, and reports the first
divergence per file (plus a mismatch count).  Zero mismatches means the two
independent implementations realize the same order.
"""

from __future__ import annotations

import subprocess
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class CheckReport:
    fixtures: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    checked_lines: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def render(self) -> str:
        lines = [
            f"checked {len(self.fixtures)} fixtures, {self.checked_lines} reference lines"
        ]
        if self.ok:
            lines.append("zero mismatches")
        else:
            lines.append(f"{len(self.mismatches)} mismatches:")
            lines.extend(f"  {m}" for m in self.mismatches[:20])
        return "\n".join(lines)


def _run_cli(cli, args):
    proc = subprocess.run(
        [cli, *args], capture_output=True, text=True, timeout=600
    )
    if proc.returncode != 0:
        raise RuntimeError(
            f"primary CLI failed: {' '.join(args)}\n{proc.stderr.strip()}"
        )
    return proc.stdout


def check_bundle(fixture_path: Path, refdir: Path, cli: str, max_norm: int,
                 report: CheckReport):
    name = fixture_path.stem
    report.fixtures.append(name)

    # the fixture must pass the primary validator
    out = _run_cli(cli, ["validate", "--field", str(fixture_path)])
    bad = [l for l in out.splitlines() if l.startswith("FAIL")]
    report.checked_lines += len(out.splitlines())
    if bad:
        report.mismatches.append(f"{name}: validate: {bad[0]}")

    # prime sections
    sections: dict[int, list[str]] = {}
    current = None
    for line in (refdir / "primes.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith("p "):
            current = int(line[2:])
            sections[current] = []
        elif line.strip():
            sections[current].append(line)
    for p, expected in sorted(sections.items()):
        got = _run_cli(cli, ["primes", "--field", str(fixture_path), "--p", str(p)])
        got_lines = [l for l in got.splitlines() if l.strip()]
        report.checked_lines += len(expected)
        if got_lines != expected:
            diff = next(
                (f"(expected {e!r}, got {g!r})" for e, g in zip(expected, got_lines) if e != g),
                f"(line counts {len(expected)} vs {len(got_lines)})",
            )
            report.mismatches.append(f"{name}: primes --p {p} {diff}")

    # ideal labels up to max_norm in one call
    expected_ideals = [
        line
        for line in (refdir / "ideals.txt").read_text(encoding="utf-8").splitlines()
        if line.strip() and int(line.split(".", 1)[0]) <= max_norm
    ]
    got = _run_cli(
        cli, ["enumerate", "--field", str(fixture_path), "--max-norm", str(max_norm)]
    )
    got_lines = [l for l in got.splitlines() if l.strip()]
    report.checked_lines += len(expected_ideals)
    if got_lines != expected_ideals:
        diff = next(
            (f"(expected {e!r}, got {g!r})" for e, g in zip(expected_ideals, got_lines) if e != g),
            f"(line counts {len(expected_ideals)} vs {len(got_lines)})",
        )
        report.mismatches.append(f"{name}: enumerate --max-norm {max_norm} {diff}")

    # label/unlabel round trips through the reference list
    step = max(1, len(expected_ideals) // 25)
    for line in expected_ideals[::step]:
        lbl, fact = line.split(" = ")
        got = _run_cli(
            cli, ["unlabel", "--field", str(fixture_path), "--label", lbl]
        ).strip()
        report.checked_lines += 1
        if got != fact:
            report.mismatches.append(f"{name}: unlabel {lbl} (expected {fact!r}, got {got!r})")
        got = _run_cli(
            cli, ["label", "--field", str(fixture_path), "--factorization", fact]
        ).strip()
        report.checked_lines += 1
        if got != lbl:
            report.mismatches.append(f"{name}: label {fact} (expected {lbl!r}, got {got!r})")


def check_all(fixtures_dir: Path, cli: str, max_norm: int) -> CheckReport:
    fixtures_dir = Path(fixtures_dir)
    report = CheckReport()
    for fixture_path in sorted(fixtures_dir.glob("*.json")):
        refdir = fixtures_dir / "references" / fixture_path.stem
        if refdir.is_dir():
            check_bundle(fixture_path, refdir, cli, max_norm, report)
    if not report.fixtures:
        raise RuntimeError(f"no fixtures with references under {fixtures_dir}")
    return report
