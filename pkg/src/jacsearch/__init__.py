"""Searching families of genus 2 and 3 hyperelliptic curves for Jacobians of
computable, cryptographically useful order."""

__version__ = "0.1.0"
