import os

from dotenv import load_dotenv

load_dotenv()
if os.path.exists(".env.local"):
    load_dotenv(".env.local", override=True)


class Config:
    """
    Конфигурация приложения
    """

    APP_NAME = os.getenv("APP_NAME", "lift-expanders")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

    SPECTRAL_TOL = float(os.getenv("SPECTRAL_TOL", 1e-9))
    LIFT_SPECTRUM_TOL = float(os.getenv("LIFT_SPECTRUM_TOL", 1e-7))

    JUMBLED_EXACT_MAX_N = int(os.getenv("JUMBLED_EXACT_MAX_N", 20))
    EXHAUSTIVE_MAX_EDGES = int(os.getenv("EXHAUSTIVE_MAX_EDGES", 26))
    CONNECTED_SUBSETS_LIMIT = int(os.getenv("CONNECTED_SUBSETS_LIMIT", 2_000_000))
    SAMPLE_SPACE_MAX_POINTS = int(os.getenv("SAMPLE_SPACE_MAX_POINTS", 1 << 16))

    WALK_LENGTH_CAP = int(os.getenv("WALK_LENGTH_CAP", 8))
    GAMMA_CONSTANT = float(os.getenv("GAMMA_CONSTANT", 10))
    CONVERSE_BOUND_CONSTANT = float(os.getenv("CONVERSE_BOUND_CONSTANT", 16))
    BISECTION_TOL = float(os.getenv("BISECTION_TOL", 1e-9))
    WITNESS_BRUTE_FORCE_MAX = int(os.getenv("WITNESS_BRUTE_FORCE_MAX", 16))

    RANDOM_REGULAR_MAX_ATTEMPTS = int(os.getenv("RANDOM_REGULAR_MAX_ATTEMPTS", 1000))
    LOCAL_REFINE_MAX_ITERATIONS = int(os.getenv("LOCAL_REFINE_MAX_ITERATIONS", 200))
    DEFAULT_SEARCH_BUDGET = int(os.getenv("DEFAULT_SEARCH_BUDGET", 500))

    METRICS_PORT = int(os.getenv("METRICS_PORT", 0))


config = Config()
