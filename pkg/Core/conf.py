from pathlib import Path

from django.conf import settings

DEFAULT_DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_SUBSPACE_CAP = 10**7
DEFAULT_SAMPLE_SIZE = 1000
DEFAULT_SAMPLE_SEED = 1729
DEFAULT_BIG_POINTS = 127


def data_dir() -> Path:
    return Path(getattr(settings, "PGARC_DATA", DEFAULT_DATA_DIR))


def subspace_cap() -> int:
    return int(getattr(settings, "PGARC_SUBSPACE_CAP", DEFAULT_SUBSPACE_CAP))


def sample_size() -> int:
    return int(getattr(settings, "PGARC_SAMPLE_SIZE", DEFAULT_SAMPLE_SIZE))


def sample_seed() -> int:
    return int(getattr(settings, "PGARC_SAMPLE_SEED", DEFAULT_SAMPLE_SEED))


def big_point_limit() -> int:
    return int(getattr(settings, "PGARC_BIG_POINTS", DEFAULT_BIG_POINTS))


def default_threads() -> int:
    return max(1, int(getattr(settings, "PGARC_THREADS", 1)))
