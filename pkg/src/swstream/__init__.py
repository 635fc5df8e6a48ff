"""Sliding-window order statistics in multi-pass streaming and two-party models."""
from .model import ProblemInstance, RunMetrics, Tapes
from .runner import ALGORITHMS, solve

__all__ = ["ProblemInstance", "RunMetrics", "Tapes", "ALGORITHMS", "solve"]
