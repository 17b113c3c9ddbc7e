"""(lambda, L) scans of ground-state SRE and circuit verification."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .. import __version__
from ..clifford import apply_circuit, build_s_circuit
from ..spinchain import SpinChainModel, ground_state
from ..sre import FAST_MAX_QUBITS, NAIVE_MAX_QUBITS, default_workers, ratio_R, sre, sre_fast
from ..statevec import make_w_state, make_wk_state, overlap
from .cache import RowCache, cache_key

log = logging.getLogger(__name__)

CSV_COLUMNS = ("model", "J", "lambda", "L", "method", "sre", "ratio_R", "energy", "degeneracy", "seconds")
CODE_VERSION = f"magique-{__version__}/rows-1"
DEFAULT_LAMBDAS = (0.4, 1.0, 2.0)


def fmt_num(v: float) -> str:
    """12 significant digits, locale independent."""
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return format(float(v), ".12g")


@dataclass(frozen=True)
class ScanSpec:
    model: str
    J: tuple[int, ...]
    lambdas: tuple[float, ...]
    Ls: tuple[int, ...]
    method: str = "fast"
    out: str | None = None
    plot: str | None = None
    cache_dir: str | None = None
    workers: int | None = None
    record_timing: bool = True

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(int(j) for j in self.J))
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        object.__setattr__(self, "Ls", tuple(int(x) for x in self.Ls))
        if self.model.lower() not in ("tfim", "cim"):
            raise ValueError(f"model must be 'tfim' or 'cim', got {self.model!r}")
        object.__setattr__(self, "model", self.model.lower())
        if not self.J or any(j not in (1, -1) for j in self.J):
            raise ValueError(f"J values must be +1 or -1, got {self.J}")
        if not self.lambdas:
            raise ValueError("lambda list is empty")
        if any(not lam >= 0 for lam in self.lambdas):
            raise ValueError(f"lambda values must be nonnegative, got {self.lambdas}")
        if 1 in self.J and 0.0 in self.lambdas:
            raise ValueError("lambda = 0 is not allowed for the frustrated chain")
        if not self.Ls:
            raise ValueError("L list is empty")
        if self.method not in ("naive", "fast"):
            raise ValueError(f"method must be 'naive' or 'fast', got {self.method!r}")
        cap = NAIVE_MAX_QUBITS if self.method == "naive" else FAST_MAX_QUBITS
        for L in self.Ls:
            if L % 2 == 0 or not 3 <= L <= cap:
                raise ValueError(f"L values must be odd and within 3..{cap} for {self.method}, got {L}")


@dataclass
class ScanResult:
    rows: list[dict[str, str]]
    failures: list[str] = field(default_factory=list)
    cache_hits: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()


def _row_to_line(row: dict[str, str]) -> str:
    buf = io.StringIO()
    csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="").writerow(row)
    return buf.getvalue()


def _line_to_row(line: str) -> dict[str, str]:
    vals = next(csv.reader([line]))
    if len(vals) != len(CSV_COLUMNS):
        raise ValueError("cached row has the wrong number of fields")
    return dict(zip(CSV_COLUMNS, vals))


def compute_cell(kind: str, J: int, lam: float, L: int, method: str, record_timing: bool = True) -> dict[str, str]:
    """One scan row for a single (model, J, lambda, L); ``ratio_R`` left empty."""
    t0 = time.perf_counter()
    model = SpinChainModel(kind, J, lam, L)
    gs = ground_state(model)
    res = sre(gs.state, method, provenance=model.describe())
    seconds = time.perf_counter() - t0 if record_timing else 0.0
    return {
        "model": kind,
        "J": str(J),
        "lambda": fmt_num(lam),
        "L": str(L),
        "method": method,
        "sre": fmt_num(res.value),
        "ratio_R": "",
        "energy": fmt_num(gs.energy),
        "degeneracy": str(gs.degeneracy),
        "seconds": fmt_num(round(seconds, 3)),
    }


def _failed_row(kind, J, lam, L, method) -> dict[str, str]:
    return {
        "model": kind, "J": str(J), "lambda": fmt_num(lam), "L": str(L), "method": method,
        "sre": "nan", "ratio_R": "", "energy": "nan", "degeneracy": "0", "seconds": "0",
    }


def run_scan(spec: ScanSpec) -> ScanResult:
    """Compute every (lambda, L, J) cell, fill ``ratio_R`` where both J exist.

    Rows come out in (lambda, L, J) order whatever the worker count.  A
    failed cell yields a ``nan`` row and an entry in ``failures``.
    """
    cache = RowCache(spec.cache_dir) if spec.cache_dir else None
    cells = [(lam, L, J) for lam in spec.lambdas for L in spec.Ls for J in spec.J]
    hits = 0

    def work(cell):
        lam, L, J = cell
        key = cache_key(spec.model, J, lam, L, spec.method, CODE_VERSION)
        if cache is not None:
            line = cache.get(key)
            if line is not None:
                try:
                    return _line_to_row(line), None, True
                except ValueError:
                    pass
        try:
            row = compute_cell(spec.model, J, lam, L, spec.method, spec.record_timing)
        except Exception as exc:  # noqa: BLE001 - a failed cell must not abort the scan
            msg = f"{spec.model} J={J:+d} lambda={lam:g} L={L}: {type(exc).__name__}: {exc}"
            log.error("scan cell failed: %s", msg)
            return _failed_row(spec.model, J, lam, L, spec.method), msg, False
        if cache is not None:
            cache.put(key, _row_to_line(row))
        return row, None, False

    workers = spec.workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, cells))
    else:
        results = [work(c) for c in cells]

    rows, failures = [], []
    for row, err, hit in results:
        rows.append(row)
        hits += hit
        if err:
            failures.append(err)

    if 1 in spec.J and -1 in spec.J:
        by_cell: dict[tuple[str, str], dict[int, dict[str, str]]] = {}
        for row in rows:
            by_cell.setdefault((row["lambda"], row["L"]), {})[int(row["J"])] = row
        for pair in by_cell.values():
            f, u = pair.get(1), pair.get(-1)
            if f is None or u is None or f["sre"] == "nan" or u["sre"] == "nan":
                continue
            # from the serialized values so cached and fresh rows agree exactly
            r = fmt_num(ratio_R(float(f["sre"]), float(u["sre"]), int(f["L"])))
            f["ratio_R"] = u["ratio_R"] = r

    result = ScanResult(rows, failures, hits)
    if spec.out:
        Path(spec.out).write_text(result.to_csv(), encoding="utf-8", newline="\n")
        if spec.plot:
            from .plot import emit_plot

            emit_plot(spec.out, "L", "sre", spec.plot, series=["J", "lambda"], title=f"{spec.model.upper()} SRE")
    return result


def scan_values(result: ScanResult, J: int, lam: float, column: str = "sre") -> list[tuple[int, float]]:
    """``(L, value)`` pairs for one (J, lambda) series."""
    key = fmt_num(lam)
    out = []
    for row in result.rows:
        if int(row["J"]) == J and row["lambda"] == key and row[column] != "":
            out.append((int(row["L"]), float(row[column])))
    return out


@dataclass
class CircuitReport:
    L: int
    passed: bool
    overlap: float
    sre_before: float
    sre_after: float
    gate_counts: dict[str, int]

    @property
    def sre_difference(self) -> float:
        return abs(self.sre_after - self.sre_before)


def verify_circuit(L: int, tol: float = 1e-9) -> CircuitReport:
    """Apply the kink-preparation circuit to ``|W_L>`` and compare with ``|W_k>``."""
    if not isinstance(L, int) or L % 2 == 0 or not 3 <= L <= 11:
        raise ValueError(f"L must be odd and within 3..11, got {L!r}")
    circ = build_s_circuit(L)
    w = make_w_state(L)
    out = apply_circuit(circ, w)
    ov = abs(overlap(make_wk_state(L), out))
    before, after = sre_fast(w).value, sre_fast(out).value
    passed = ov >= 1 - tol and abs(after - before) <= tol
    return CircuitReport(L, passed, ov, before, after, dict(circ.counts()))
