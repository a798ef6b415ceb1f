import os
from fractions import Fraction
from dotenv import load_dotenv

load_dotenv()

class Settings:
    # Logging
    ENABLE_LOGGING = os.getenv("ENABLE_LOGGING", "true").lower() == "true"
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

    # Learner workflow settings
    LEARNER_RECURSION_LIMIT = int(os.getenv("LEARNER_RECURSION_LIMIT", "1000"))

    # Search budgets
    FIT_NODE_BUDGET = int(os.getenv("FIT_NODE_BUDGET", "200000"))
    FIT_JOBS = int(os.getenv("FIT_JOBS", "1"))
    APPROX_NODE_BUDGET = int(os.getenv("APPROX_NODE_BUDGET", "50000"))
    SEPARATION_SEARCH_LIMIT = int(os.getenv("SEPARATION_SEARCH_LIMIT", "100000"))

    # Sampling
    DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))
    DEFAULT_LAMBDA = Fraction(os.getenv("DEFAULT_LAMBDA", "1/2"))
    CHAIN_WORD_CUTOFF = int(os.getenv("CHAIN_WORD_CUTOFF", "16"))
    EXPERIMENT_JOBS = int(os.getenv("EXPERIMENT_JOBS", "1"))

    # Output
    DECIMAL_DIGITS = int(os.getenv("DECIMAL_DIGITS", "6"))

settings = Settings()
