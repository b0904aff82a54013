"""Decision procedures for rational subsets of the monogenic free inverse monoid."""
