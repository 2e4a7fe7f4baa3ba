"""Test suite for Runner Training System."""