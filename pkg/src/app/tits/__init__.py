"""Tits quadratic forms and positivity searches."""
