import os
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
# First try to load .env, if it doesn't exist fall back to .env.dev
if os.path.exists('.env'):
    load_dotenv('.env')
elif os.path.exists('.env.dev'):
    load_dotenv('.env.dev')


def _optional_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return None
    return int(value)


class Config:
    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

    # Master seed fallback for every Monte Carlo command
    ZSL_SEED = _optional_int('ZSL_SEED')

    # Poincare ascent
    POINCARE_RESTARTS = int(os.getenv('POINCARE_RESTARTS', '32'))
    POINCARE_MAX_ITER = int(os.getenv('POINCARE_MAX_ITER', '5000'))
    POINCARE_TOL = float(os.getenv('POINCARE_TOL', '1e-10'))
    GOLDEN_TOL = float(os.getenv('GOLDEN_TOL', '1e-12'))
    MARKOV_SAMPLES = int(os.getenv('MARKOV_SAMPLES', '64'))
    POINCARE_DENSE_CAP = int(os.getenv('POINCARE_DENSE_CAP', '2000'))  # warm starts need a dense eigensolve

    # Certification
    P_CAP = float(os.getenv('P_CAP', '64'))
    BISECTION_TOL = float(os.getenv('BISECTION_TOL', '1e-9'))
    CONSTANT_K = float(os.getenv('CONSTANT_K', '1.0'))
    CONSTANT_B = float(os.getenv('CONSTANT_B', '1.0'))
    CONSTANT_B_PRIME = float(os.getenv('CONSTANT_B_PRIME', '1.0'))
    CONFDIM_ETA = float(os.getenv('CONFDIM_ETA', '0.1'))  # slack of the conformal-dimension bound

    # Random groups
    MAX_ENUMERATE_M = int(os.getenv('MAX_ENUMERATE_M', '64'))

    # Random graphs
    CONNECTIVITY_ETA = float(os.getenv('CONNECTIVITY_ETA', '0.1'))
    DEGREE_BAND_LOW = float(os.getenv('DEGREE_BAND_LOW', '0.25'))
    DEGREE_BAND_HIGH = float(os.getenv('DEGREE_BAND_HIGH', '2.5'))

    # Fixed point iteration
    FIXED_POINT_TOL = float(os.getenv('FIXED_POINT_TOL', '1e-8'))
    FIXED_POINT_MAX_ITER = int(os.getenv('FIXED_POINT_MAX_ITER', '200'))

    # Worker pool
    WORKERS = int(os.getenv('WORKERS', '1'))


config = Config()
