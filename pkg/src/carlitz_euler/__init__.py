"""Carlitz cyclotomic function fields, Stark units and their Euler system."""
