"""Representations of bound quiver algebras over prime fields."""
