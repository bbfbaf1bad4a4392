"""
flattop-ris Test Suite.

This package contains tests for the flat-top beam design flow, from the
AMAF-RIS geometry through the command line.
"""
