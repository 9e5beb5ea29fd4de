"""Domain services: number theory, cyclotomy, sequences, GF(2) fields, linear complexity, grid, storage and progress."""
