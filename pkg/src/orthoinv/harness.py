"""Verification runner: suite registry, disk cache, and report writing.

The runner drives the check suites in ``relations`` for one (m, q)
configuration, streams progress to stderr, and optionally writes a JSON
report with a CSV table and two rendered figures next to it.  Exit
status is decided by the caller from ``report["summary"]["failed"]``.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field

from . import relations as rel
from .relations import CheckContext, CheckResult

VALID_Q = (2, 4, 8, 16)

# registry order is the run order for "all"
SUITES = {
    "field": rel.verify_field,
    "steenrod": rel.verify_steenrod,
    "dickson": rel.verify_dickson,
    "natmon": rel.verify_natmon,
    "delta": rel.verify_delta,
    "generators-e": rel.verify_series,
    "detthm": rel.verify_det_thm,
    "relations": rel.verify_relations,
    "q2m3": rel.verify_q2_m3,
    "group": rel.verify_group,
    "hsop": rel.verify_hsop,
    "hilbert": rel.hilbert_check,
    "rank": rel.rank_formula_check,
}


class ConfigError(ValueError):
    """Rejected run configuration; the CLI maps this to exit status 2."""


@dataclass
class RunConfig:
    m: int
    q: int
    suites: list[str] = field(default_factory=lambda: ["all"])
    degree_cap: int | None = None
    term_budget: int = 2_000_000
    jobs: int = 1
    cache_dir: str | None = None
    report: str | None = None

    def __post_init__(self):
        if not 1 <= self.m <= 3:
            raise ConfigError(f"m={self.m} outside the supported range 1..3")
        if self.q not in VALID_Q:
            raise ConfigError(f"q={self.q} not one of {VALID_Q}")
        if self.term_budget <= 0:
            raise ConfigError("term budget must be positive")
        if self.degree_cap is not None and self.degree_cap < 0:
            raise ConfigError("degree cap must be nonnegative")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        names = self.suites or ["all"]
        seen = []
        for name in names:
            if name != "all" and name not in SUITES:
                raise ConfigError(
                    f"unknown suite {name!r}; choose from "
                    f"{', '.join(list(SUITES) + ['all'])}"
                )
            if name not in seen:
                seen.append(name)
        self.suites = list(SUITES) if "all" in seen else seen

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "q": self.q,
            "suites": list(self.suites),
            "degree_cap": self.degree_cap,
            "term_budget": self.term_budget,
            "jobs": self.jobs,
            "cache_dir": self.cache_dir,
        }


class TextCache:
    """Digest-checked text files under one directory.

    Every entry carries a content digest on its first line.  A mismatch
    on load is treated as a miss so a stale or truncated file forces a
    rebuild instead of poisoning the run.  Stores go through a temp
    file and an atomic replace.
    """

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def _path(self, name: str) -> str:
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", name)
        return os.path.join(self.root, safe + ".txt")

    def load(self, name: str) -> str | None:
        path = self._path(name)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError:
            return None
        head, _, body = raw.partition("\n")
        if not head.startswith("# sha256 "):
            print(f"cache: {name}: missing digest header, ignoring", file=sys.stderr)
            return None
        want = head.removeprefix("# sha256 ").strip()
        got = hashlib.sha256(body.encode()).hexdigest()
        if got != want:
            print(f"cache: {name}: digest mismatch, rebuilding", file=sys.stderr)
            return None
        return body

    def store(self, name: str, text: str) -> None:
        path = self._path(name)
        digest = hashlib.sha256(text.encode()).hexdigest()
        tmp = path + f".tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(f"# sha256 {digest}\n")
            fh.write(text)
        os.replace(tmp, path)


def run(config: RunConfig, progress: bool = True) -> dict:
    """Run the configured suites and return the report dictionary."""
    if config.jobs > 1 and progress:
        print(
            f"jobs={config.jobs} requested; checks share one context and "
            "run sequentially",
            file=sys.stderr,
        )
    cache = TextCache(config.cache_dir) if config.cache_dir else None
    ctx = CheckContext(
        config.m,
        config.q,
        degree_cap=config.degree_cap,
        term_budget=config.term_budget,
        cache=cache,
    )
    checks: list[CheckResult] = []
    t0 = time.time()
    for pos, name in enumerate(config.suites, 1):
        if progress:
            print(
                f"[{pos:2d}/{len(config.suites)}] {name} ...",
                end="",
                file=sys.stderr,
                flush=True,
            )
        ts = time.time()
        rows = SUITES[name](ctx)
        checks.extend(rows)
        if progress:
            bad = sum(r.status == "fail" for r in rows)
            state = "ok" if bad == 0 else f"{bad} FAILED"
            print(
                f" {len(rows)} checks, {time.time() - ts:.1f}s ({state})",
                file=sys.stderr,
            )
    total = time.time() - t0
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in checks:
        counts[r.status] = counts.get(r.status, 0) + 1
    report = {
        "config": config.as_dict(),
        "checks": [
            {
                "name": r.name,
                "status": r.status,
                "millis": r.millis,
                "detail": r.detail,
            }
            for r in checks
        ],
        "summary": {
            "total": len(checks),
            "passed": counts["pass"],
            "failed": counts["fail"],
            "skipped": counts["skipped"],
            "seconds": round(total, 3),
            "ok": counts["fail"] == 0,
        },
    }
    if config.report:
        write_report(report, config.report)
        if progress:
            print(f"report written to {config.report}", file=sys.stderr)
    return report


def write_report(report: dict, path: str) -> None:
    """Write the JSON report plus a CSV table and two figures beside it."""
    out_dir = os.path.dirname(os.path.abspath(path))
    os.makedirs(out_dir, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    stem, _ = os.path.splitext(path)
    with open(stem + ".csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "status", "millis", "detail"])
        for row in report["checks"]:
            writer.writerow([row["name"], row["status"], row["millis"], row["detail"]])
    _render_figures(report, stem)


_STATUS_COLORS = {"pass": "#2a9d3a", "fail": "#d62828", "skipped": "#a8a29e"}


def _render_figures(report: dict, stem: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    checks = report["checks"]
    cfg = report["config"]
    label = f"m={cfg['m']} q={cfg['q']}"

    # timing bar, one row per check, colored by status
    rows = list(reversed(checks))
    height = max(2.0, 0.18 * len(rows) + 0.8)
    fig, ax = plt.subplots(figsize=(9, height))
    ys = range(len(rows))
    ax.barh(
        list(ys),
        [max(r["millis"], 0.1) for r in rows],
        color=[_STATUS_COLORS[r["status"]] for r in rows],
    )
    ax.set_yticks(list(ys))
    ax.set_yticklabels([r["name"] for r in rows], fontsize=5)
    ax.set_xscale("log")
    ax.set_xlabel("milliseconds")
    ax.set_title(f"check timing, {label}")
    fig.tight_layout()
    fig.savefig(stem + "-timing.png", dpi=150)
    plt.close(fig)

    # status summary
    summary = report["summary"]
    fig, ax = plt.subplots(figsize=(4.5, 3))
    names = ["passed", "failed", "skipped"]
    values = [summary["passed"], summary["failed"], summary["skipped"]]
    bars = ax.bar(names, values, color=[_STATUS_COLORS[s] for s in ("pass", "fail", "skipped")])
    ax.bar_label(bars)
    ax.set_title(f"{summary['total']} checks, {label}, {summary['seconds']}s")
    fig.tight_layout()
    fig.savefig(stem + "-status.png", dpi=150)
    plt.close(fig)
