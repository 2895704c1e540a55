import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# Make the sibling oracles module importable regardless of invocation dir.
sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile(
    "default",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
