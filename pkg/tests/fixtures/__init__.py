"""
Shared test fixtures for gatesmith.
"""
