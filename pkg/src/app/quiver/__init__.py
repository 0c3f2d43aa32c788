"""Quivers, relations and bound quiver algebras."""
