# config.py - Settings for the acquaintance toolkit, read from the environment
import os

from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(__file__))
load_dotenv(os.path.join(basedir, ".env"))


class Config:
    """Environment-driven defaults. Library calls take explicit overrides."""

    LOG_LEVEL = os.environ.get("ACQ_LOG_LEVEL", "WARNING")

    # exact solver
    EXACT_MAX_VERTICES = int(os.environ.get("ACQ_EXACT_MAX_VERTICES", 10))
    EXACT_MAX_ROUNDS = int(os.environ.get("ACQ_EXACT_MAX_ROUNDS", 6))

    # generators and heuristics
    GNP_RETRIES = int(os.environ.get("ACQ_GNP_RETRIES", 100))
    LONG_PATH_EFFORT = int(os.environ.get("ACQ_LONG_PATH_EFFORT", 4000))
    SEPARATOR_TOP_K = int(os.environ.get("ACQ_SEPARATOR_TOP_K", 3))

    # graphs with acquaintance time one
    RANDOM_ROUND_FACTOR = int(os.environ.get("ACQ_RANDOM_ROUND_FACTOR", 200))
    RANDOM_RESTARTS = int(os.environ.get("ACQ_RANDOM_RESTARTS", 5))
    FINAL_PHASE_MAX_C = int(os.environ.get("ACQ_FINAL_PHASE_MAX_C", 3))

    DEFAULT_SEED = int(os.environ.get("ACQ_DEFAULT_SEED", 0))
