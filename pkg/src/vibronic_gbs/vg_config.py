import os
from dotenv import load_dotenv

load_dotenv()

DEFAULT_CACHE_DIR = os.path.join("database", "instance")
LEDGER_FILE_NAME = "runs.db"


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise ValueError(f"environment variable {name} must be an integer, got {value!r}") from exc


class VibronicConfig:
    def __init__(
        self,
        cache_dir: str = "",
        cutoff: int | None = None,
        num_samples: int | None = None,
        workers: int | None = None,
        log_level: str = "",
    ):
        """
        Initialize the VibronicConfig object.
        Arguments left empty fall back to the environment (and a .env file),
        then to built-in defaults.
        Parameters
        ----------
        cache_dir : str
            Directory holding the run ledger (VIBRONIC_CACHE_DIR).
        cutoff : int
            Default per-mode photon cutoff (VIBRONIC_CUTOFF).
        num_samples : int
            Default number of samples (VIBRONIC_SAMPLES).
        workers : int
            Default sampler threads (VIBRONIC_WORKERS).
        log_level : str
            Default log level (VIBRONIC_LOG_LEVEL).

        """
        self.cache_dir = cache_dir or os.getenv("VIBRONIC_CACHE_DIR") or DEFAULT_CACHE_DIR
        self.cutoff = cutoff if cutoff is not None else _env_int("VIBRONIC_CUTOFF", 10)
        self.num_samples = (
            num_samples if num_samples is not None else _env_int("VIBRONIC_SAMPLES", 10_000)
        )
        self.workers = workers if workers is not None else _env_int("VIBRONIC_WORKERS", 1)
        self.log_level = (log_level or os.getenv("VIBRONIC_LOG_LEVEL") or "INFO").upper()

    @property
    def ledger_path(self) -> str:
        return os.path.join(self.cache_dir, LEDGER_FILE_NAME)

    def as_dict(self) -> dict:
        return {
            "cache_dir": self.cache_dir,
            "cutoff": self.cutoff,
            "num_samples": self.num_samples,
            "workers": self.workers,
            "log_level": self.log_level,
        }

    def __str__(self):
        return (
            f"VibronicConfig(cache_dir={self.cache_dir}, cutoff={self.cutoff}, "
            f"num_samples={self.num_samples}, workers={self.workers}, "
            f"log_level={self.log_level})"
        )
