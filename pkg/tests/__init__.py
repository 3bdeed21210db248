"""Test suite for rrdist."""
