"""Decision rules for tau-tilting finiteness and representation type."""
