"""Pure computation modules: exact arithmetic, Gamma0(N), the normalizer, group enumeration
and structure verification."""
