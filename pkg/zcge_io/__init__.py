# IO utilities package
