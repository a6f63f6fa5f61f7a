"""Scripts to run."""
