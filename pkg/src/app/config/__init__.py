"""Configuration package."""

