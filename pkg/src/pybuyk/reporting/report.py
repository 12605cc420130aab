"""
Tabular reports of instances, one row per instance and menu.

Every numeric column holds the exact rational as a ``"p/q"`` string and is
followed by a column with suffix ``_approx`` holding a decimal approximation
to six significant digits.
"""
import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from pybuyk.benchmarks.menu_size import menu_size_revenue_bound
from pybuyk.benchmarks.optimal import optimal_buy_one
from pybuyk.benchmarks.posted import brev, srev
from pybuyk.buyer.adaptive import verify_adaptive_buyk_ic
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.cli.io import InstanceFile
from pybuyk.menugap.gap import menugap
from pybuyk.utils.config import EnumerationConfig, ParallelConfig
from pybuyk.utils.numeric import approx, format_rational
from pybuyk.utils.parallel import MapReduceJob

__all__ = ["ReportRow", "report_rows", "reports_dataframe", "write_report"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReportRow:
    """Figures of one menu of an instance. Menu fields are ``None`` for
    instances without menus, and ``adaptive_ic`` is ``None`` when the
    adaptive check is skipped for too many items."""

    instance: str
    n: int
    k: int
    brev: Fraction
    srev: Fraction
    opt_buy_one: Fraction
    menu: Optional[int] = None
    revenue: Optional[Fraction] = None
    ic: Optional[bool] = None
    adaptive_ic: Optional[bool] = None
    size_bound_holds: Optional[bool] = None
    menugap: Optional[Fraction] = None

    @property
    def ratio(self) -> Optional[Fraction]:
        """Revenue of the menu over the bundling revenue."""
        if self.revenue is None or self.brev == 0:
            return None
        return self.revenue / self.brev

    def to_dict(self) -> Dict[str, Any]:
        """Cells of the row, exact rationals as strings followed by their
        ``_approx`` columns."""
        cells: Dict[str, Any] = {}
        values = [(f.name, getattr(self, f.name)) for f in fields(self)]
        for name, value in values + [("ratio", self.ratio)]:
            if isinstance(value, Fraction):
                cells[name] = format_rational(value)
                cells[f"{name}_approx"] = approx(value)
            elif name in ("revenue", "menugap", "ratio"):
                cells[name] = ""
                cells[f"{name}_approx"] = ""
            elif value is None:
                cells[name] = ""
            else:
                cells[name] = value
        return cells


def report_rows(
    name: str,
    instance: InstanceFile,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> List[ReportRow]:
    """Evaluates the benchmarks of an instance and every menu it contains.

    :param name: identifier of the instance, usually its file name
    :param instance: the parsed instance
    :param k: number of entries a buyer may combine
    :param config: enumeration caps
    """
    dist = instance.dist
    common = dict(
        instance=name,
        n=instance.n,
        k=k,
        brev=brev(dist).value,
        srev=srev(dist).value,
        opt_buy_one=optimal_buy_one(dist, config=config).value,
        menugap=(
            None
            if instance.sequences is None
            else menugap(instance.sequences, k, config=config).total
        ),
    )
    if not instance.menus:
        return [ReportRow(**common)]  # type: ignore

    rows = []
    for i, menu in enumerate(instance.menus):
        check = menu_size_revenue_bound(dist, menu, k, config=config)
        adaptive = None
        if instance.n <= config.max_adaptive_items:
            adaptive = verify_adaptive_buyk_ic(menu, dist, k, config=config).ic
        rows.append(
            ReportRow(
                **common,  # type: ignore
                menu=i,
                revenue=check.revenue,
                ic=verify_buyk_ic(menu, dist, k, config=config).ic,
                adaptive_ic=adaptive,
                size_bound_holds=check.holds,
            )
        )
    return rows


def _rows_chunk(
    items: Sequence[Tuple[str, InstanceFile]], *, k: int, config: EnumerationConfig
) -> List[ReportRow]:
    return [
        row for name, inst in items for row in report_rows(name, inst, k, config=config)
    ]


def _concatenate(chunks: List[List[ReportRow]]) -> List[ReportRow]:
    return [row for chunk in chunks for row in chunk]


def reports_dataframe(
    instances: Iterable[Tuple[str, InstanceFile]],
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    parallel_config: ParallelConfig = ParallelConfig(),
    n_jobs: int = 1,
) -> pd.DataFrame:
    """Report of several instances, one row per instance and menu, in input
    order.

    :param instances: pairs of name and instance
    :param k: number of entries a buyer may combine
    :param config: enumeration caps
    :param parallel_config: backend used to process instances concurrently
    :param n_jobs: number of parallel jobs
    """
    items = list(instances)
    rows: List[ReportRow] = []
    if items:
        job: MapReduceJob[Sequence[Tuple[str, InstanceFile]], List[ReportRow]]
        job = MapReduceJob(
            items,
            map_func=_rows_chunk,
            reduce_func=_concatenate,
            map_kwargs=dict(k=k, config=config),
            config=parallel_config,
            n_jobs=n_jobs,
        )
        rows = job()
    logger.info(f"Report with {len(rows)} rows for {len(items)} instances")
    if not rows:
        return pd.DataFrame()
    return pd.DataFrame([row.to_dict() for row in rows])


def write_report(df: pd.DataFrame, path: Union[str, Path]):
    """Writes a report as CSV with a header row and no index."""
    df.to_csv(path, index=False)
