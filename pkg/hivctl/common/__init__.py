"""Common utilities for all applications."""
