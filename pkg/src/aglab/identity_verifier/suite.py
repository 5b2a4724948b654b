"""The identity suite: refinement studies plus grid-independent spectral and seeded checks."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence



from .identities import (
    DEFAULT_GRIDS,
    default_cases,
    hilbert_reference_at_zero,
    hilbert_unboundedness_demo,
    hilbert_value_at_zero,
    order_study,
    verify_multiplier_on_modes,
)
from .studies import commutator_study

HEADER = ["identity_id", "grid_h", "residual", "observed_order", "pass"]


@dataclass(frozen=True)
class SuiteRow:
    identity_id: str
    grid_h: float | None
    residual: float
    observed_order: float | None
    passed: bool

    def cells(self) -> list[str]:
        fmt = lambda v: "" if v is None else repr(float(v))  # noqa: E731
        return [self.identity_id, fmt(self.grid_h), repr(float(self.residual)), fmt(self.observed_order),
                "true" if self.passed else "false"]


@dataclass(frozen=True)
class SuiteReport:
    rows: tuple[SuiteRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        for r in self.rows:
            w.writerow(r.cells())
        return buf.getvalue()


def parse_suite_csv(text: str) -> SuiteReport:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return SuiteReport(())
    if rows[0] != HEADER:
        raise ValueError(f"line 1: unexpected header {rows[0]!r}")
    out = []
    for lineno, r in enumerate(rows[1:], start=2):
        if len(r) != 5 or r[4] not in ("true", "false"):
            raise ValueError(f"line {lineno}: malformed suite row")
        try:
            opt = lambda s: None if s == "" else float(s)  # noqa: E731
            out.append(SuiteRow(r[0], opt(r[1]), float(r[2]), opt(r[3]), r[4] == "true"))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return SuiteReport(tuple(out))


def _grid_rows(case, grids) -> list[SuiteRow]:
    st = order_study(case, grids)
    rows = []
    for k, (h, res) in enumerate(zip(st.hs, st.residuals)):
        order = st.orders[k - 1] if k else None
        rows.append(SuiteRow(st.identity_id, h, res, order, st.passed))
    return rows


def _multiplier_rows(k_max: int = 16) -> list[SuiteRow]:
    worst = max(verify_multiplier_on_modes(k_max).values())
    return [SuiteRow(f"multiplier:modes{k_max}", None, worst, None, worst <= 1e-8)]


HILBERT_SIZES = tuple(2**j for j in range(3, 13))


def _hilbert_rows() -> list[SuiteRow]:
    demos = {n: hilbert_unboundedness_demo(n) for n in HILBERT_SIZES}
    grows = all(demos[2 * n].sup_h_psi > demos[n].sup_h_psi for n in HILBERT_SIZES[:-1])
    drift = abs(demos[4096].sup_psi - demos[64].sup_psi) / demos[64].sup_psi
    err = abs(hilbert_value_at_zero(4096) - hilbert_reference_at_zero(4096))
    return [SuiteRow("hilbert:unbounded", None, err, None, grows and drift < 0.02 and err <= 1e-10)]


def _commutator_rows(seed: int) -> list[SuiteRow]:
    st = commutator_study(seed)
    return [SuiteRow("commutator:seeded", None, st.max_ratio, None, st.violations == 0)]


def family_of(identity_id: str) -> str:
    return identity_id.split(":", 1)[0]


def suite_families() -> list[str]:
    fams = []
    for c in default_cases():
        if family_of(c.identity_id) not in fams:
            fams.append(family_of(c.identity_id))
    return fams + ["multiplier", "hilbert", "commutator"]


def run_suite(
    grids: Sequence[int] = DEFAULT_GRIDS,
    select: Sequence[str] | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Run every selected family; ``select`` matches families ("jin_kohn") or full ids."""
    if len(grids) < 2:
        raise ValueError("need at least two grids to observe an order")

    def wanted(identity_id: str) -> bool:
        return select is None or identity_id in select or family_of(identity_id) in select

    tasks: list[Callable[[], list[SuiteRow]]] = []
    for case in default_cases():
        if wanted(case.identity_id):
            tasks.append(lambda c=case: _grid_rows(c, grids))
    if wanted("multiplier:modes16"):
        tasks.append(_multiplier_rows)
    if wanted("hilbert:unbounded"):
        tasks.append(_hilbert_rows)
    if wanted("commutator:seeded"):
        tasks.append(lambda: _commutator_rows(seed))
    if not tasks:
        raise ValueError(f"no identity matches {list(select or [])}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda f: f(), tasks))
    else:
        chunks = [f() for f in tasks]
    return SuiteReport(tuple(r for chunk in chunks for r in chunk))


def rows_per_grid(report: SuiteReport) -> dict[float, int]:
    out: dict[float, int] = {}
    for r in report.rows:
        if r.grid_h is not None:
            out[r.grid_h] = out.get(r.grid_h, 0) + 1
    return out
