from .cache import OperatorMatrixCache, cache_load, cache_store
from .config import ALL, SUITES, SuiteConfig
from .report import SCHEMA_VERSION, VerificationReport, emit_report, parse_report
from .suites import build_tasks, run_suite

__all__ = [
    "ALL",
    "SUITES",
    "SCHEMA_VERSION",
    "SuiteConfig",
    "VerificationReport",
    "OperatorMatrixCache",
    "build_tasks",
    "cache_load",
    "cache_store",
    "emit_report",
    "parse_report",
    "run_suite",
]
