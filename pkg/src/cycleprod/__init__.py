"""Products of l-cycles in alternating groups: formulas, oracle and witnesses."""
