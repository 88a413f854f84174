import os
from dotenv import load_dotenv

# Load overrides from a .env file, if any
load_dotenv()

# --- ENUMERATION ---
# Largest q = p^k enumerated for one (curve, k) task
ENUMERATION_BUDGET = int(os.getenv("SUPERSINGULAR_BUDGET", 10**8))

# Build a discrete-log table for residue classification up to this q
TABLE_LIMIT = int(os.getenv("SUPERSINGULAR_TABLE_LIMIT", 2**24))

# Elements per contiguous enumeration chunk (bounds numpy memory)
CHUNK_SIZE = int(os.getenv("SUPERSINGULAR_CHUNK_SIZE", 2**18))

# Worker processes, 0 means one per CPU
THREADS = int(os.getenv("SUPERSINGULAR_THREADS", 0))

# --- CROSS-CHECKS ---
# Zeta round trip at k = g + 1 only when p^(g+1) stays below this
CROSS_CHECK_LIMIT = int(os.getenv("SUPERSINGULAR_CROSS_CHECK_LIMIT", 10**6))

# Largest q for the 2-variable brute-force oracle
ORACLE_LIMIT = int(os.getenv("SUPERSINGULAR_ORACLE_LIMIT", 4096))

# Largest q for the M(8) bijection check
BIJECTION_LIMIT = 1000

# --- HARD LIMITS ---
MAX_PRIME = 2**20
MAX_EXTENSION_DEGREE = 12

# --- LOGGING ---
LOG_LEVEL = os.getenv("SUPERSINGULAR_LOG_LEVEL", "INFO")
LOG_FORMAT = '%(asctime)s - %(levelname)s: %(message)s'
