"""Scans, circuit checks, CSV/SVG output and the command line."""

from .plot import emit_plot
from .scan import CSV_COLUMNS, CircuitReport, ScanResult, ScanSpec, compute_cell, run_scan, scan_values, verify_circuit

__all__ = [
    "CSV_COLUMNS",
    "CircuitReport",
    "ScanResult",
    "ScanSpec",
    "compute_cell",
    "emit_plot",
    "run_scan",
    "scan_values",
    "verify_circuit",
]
