"""Six half-turns in the hyperbolic plane."""
