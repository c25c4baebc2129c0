//! Holds the `acceptance` test target, which runs every acceptance criterion
//! over the shared corpus and prints one line per criterion.
