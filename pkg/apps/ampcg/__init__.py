"""Structure learning for AMP chain graphs."""
