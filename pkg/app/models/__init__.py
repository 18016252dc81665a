from app.models.models import (
    BenchRun,
    BenchResult,
    ScalingResult
)

__all__ = [
    "BenchRun",
    "BenchResult",
    "ScalingResult",
]
