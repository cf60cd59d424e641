import os
from dotenv import load_dotenv

load_dotenv()  # Load environment variables from a .env file

# Defaults for every verb (overridable per CLI invocation)
DEFAULT_DELTA = int(os.getenv("CR_DEFAULT_DELTA", "1"))  # +1 hyperbolic, -1 elliptic
DEFAULT_WEIGHT_BOUND = int(os.getenv("CR_WEIGHT_BOUND", "8"))
DEFAULT_SEED = int(os.getenv("CR_SEED", "20240"))
DEFAULT_MODE = os.getenv("CR_MODE", "exact")  # exact | numeric

# Finite differences for the Maurer-Cartan check
DEFAULT_FD_STEP = float(os.getenv("CR_FD_STEP", "1e-4"))
DEFAULT_FLATNESS_POINTS = int(os.getenv("CR_FLATNESS_POINTS", "20"))

# Service
LOG_LEVEL = os.getenv("CR_LOG_LEVEL", "INFO")
CORS_ORIGINS = [
    origin.strip()
    for origin in os.getenv("CR_CORS_ORIGINS", "http://localhost:5173").split(",")
    if origin.strip()
]
