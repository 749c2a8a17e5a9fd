"""Simply typed λ-calculus with isomorphic types identified."""
