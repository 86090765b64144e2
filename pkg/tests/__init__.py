# Marks 'tests' as a package so conftest helpers import cleanly.
