# config.py
import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

TOOL_NAME = "snarklab"
TOOL_VERSION = "1.0.0"

MPOLE_FORMAT_VERSION = 1           # Header version of .mpole documents
ENUMERATION_LIMIT = 10             # Max semiedges for colouring-set enumeration
ORACLE_EDGE_BOUND = 36             # Max edges for the cyclic connectivity oracle
COLOURING_ORACLE_EDGE_BOUND = 40   # Max edges for the exhaustive colouring oracle
SAT_EDGE_THRESHOLD = 150           # "auto" backend switches to SAT above this many edges
SAT_SOLVER = "g4"                  # python-sat solver name (Glucose 4)
DEADLINE_CHECK_INTERVAL = 512      # DFS decisions between deadline checks
DEFAULT_JOBS = 1
DEFAULT_TIMEOUT: Optional[float] = None

REPORT_DIR = "reports"
REPORT_PATH = os.path.join(REPORT_DIR, "snarklab_reports.jsonl")
LOG_FILE = os.path.join(REPORT_DIR, "snarklab.log")

# Properties accepted by `verify --props`
KNOWN_PROPERTIES = [
    "snark",
    "critical",
    "bicritical",
    "strictly-critical",
    "girth",
    "cc",
]

Backend = Literal["dfs", "sat", "auto"]


class Settings(BaseModel):
    """Runtime settings, environment first, CLI flags override."""
    jobs: int = Field(default=DEFAULT_JOBS, ge=1)
    timeout: Optional[float] = Field(default=DEFAULT_TIMEOUT, gt=0)
    backend: Backend = "dfs"
    enumeration_limit: int = Field(default=ENUMERATION_LIMIT, ge=0)
    report_path: str = REPORT_PATH
    log_level: str = "INFO"

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "Settings":
        load_dotenv(env_file)
        values = {}
        if os.getenv("SNARKLAB_JOBS"):
            values["jobs"] = int(os.environ["SNARKLAB_JOBS"])
        if os.getenv("SNARKLAB_TIMEOUT"):
            values["timeout"] = float(os.environ["SNARKLAB_TIMEOUT"])
        if os.getenv("SNARKLAB_BACKEND"):
            values["backend"] = os.environ["SNARKLAB_BACKEND"].strip().lower()
        if os.getenv("SNARKLAB_ENUM_LIMIT"):
            values["enumeration_limit"] = int(os.environ["SNARKLAB_ENUM_LIMIT"])
        if os.getenv("SNARKLAB_REPORT_PATH"):
            values["report_path"] = os.environ["SNARKLAB_REPORT_PATH"]
        if os.getenv("SNARKLAB_LOG_LEVEL"):
            values["log_level"] = os.environ["SNARKLAB_LOG_LEVEL"].upper()
        return cls(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def set_settings(settings: Settings) -> None:
    global _settings
    _settings = settings
