"""Module with configuration files for the project."""
