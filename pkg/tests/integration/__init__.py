"""Integration tests module."""