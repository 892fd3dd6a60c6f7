"""Command-line harness: experiment files, convergence studies, selftest."""
