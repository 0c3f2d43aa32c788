"""Support tau-tilting pairs, left mutation and Hasse-diagram enumeration."""
