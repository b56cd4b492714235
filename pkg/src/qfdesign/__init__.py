"""Congruence invariants of rational quadratic forms and their use as
non-existence tests for symmetric designs."""

__version__ = "0.1.0"
