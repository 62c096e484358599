"""Finite left cancellative left semi-braces on explicit Cayley tables.

A left cancellative left semi-brace is a set B with two operations: a left
cancellative semigroup (B, +), a group (B, o), and the compatibility law

    a o (b + c) = a o b + a o (a' + c)        (a' = inverse of a in (B, o)).

The package verifies the axioms, extracts the idempotent part E and the skew
brace part G, decomposes semi-braces into semidirect products, constructs the
classification families for orders p*q and 2*p^2, computes right/left
nilpotency series, derives set-theoretic Yang-Baxter solutions, and enumerates
all structures of a given small order up to isomorphism.
"""

__version__ = "0.1.0"
