"""Linear algebra tests."""
