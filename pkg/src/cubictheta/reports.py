"""Shared report record for identity checks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class IdentityReport:
    """One verified identity: both sides, their distance, and the verdict."""

    name: str
    lhs: object
    rhs: object
    abs_err: object
    tol: float
    passed: bool
    methods: tuple
    seconds: float

    def __post_init__(self):
        if self.passed != (self.abs_err <= self.tol):
            raise ValueError("pass flag must equal abs_err <= tol")
