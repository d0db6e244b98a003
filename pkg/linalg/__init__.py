"""Exact integer linear algebra."""
