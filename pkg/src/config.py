"""
Configuration settings for the state-surface fiberedness toolkit.
"""

from pathlib import Path


class Config:
    """Central configuration for the analysis pipeline."""

    # Census limits
    CENSUS_BOUND = 20       # 2^20 states is the practical ceiling
    CENSUS_WORKERS = 4
    EXHAUSTIVE_BOUND = 6    # crossing bound for all-state sweeps in corpus checks

    # Determinant theorem checks
    SHARP_FAMILY_MAX = 12
    SWEEP_SAMPLES = 10_000
    SWEEP_MAX_N = 6
    SWEEP_ENTRY_BOUND = 10
    SWEEP_SEED = 2024

    # Logging
    LOG_ENV_VAR = "KSTATE_LOG"
    LOG_LEVELS = {"error", "info", "debug"}
    DEFAULT_LOG_LEVEL = "error"

    # Census CSV layout, frozen for downstream diffing
    CENSUS_COLUMNS = (
        "state",
        "circles",
        "euler_characteristic",
        "alternating",
        "homogeneous",
        "verdict",
        "certificate",
        "basis",
        "obstruction",
    )

    # Exit codes: verdicts are payload, not status
    EXIT_OK = 0
    EXIT_USAGE = 1
    EXIT_INVALID = 2
    EXIT_INTERNAL = 3

    # Paths
    ROOT_DIR = Path(__file__).parent.parent
    DATA_DIR = ROOT_DIR / "data"
    DOCS_DIR = ROOT_DIR / "docs"
    SCHEMA_DIR = DOCS_DIR / "schemas"
    REPORTS_DIR = ROOT_DIR / "reports"
    CORPUS_FILE = DATA_DIR / "corpus.csv"

    # Ensure directories exist
    REPORTS_DIR.mkdir(exist_ok=True)
