"""Storage layer (sqlite result cache and JSON export)."""
