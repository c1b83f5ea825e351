"""Finite set-theoretic solutions of the braid relation."""
