"""Application source package root."""

