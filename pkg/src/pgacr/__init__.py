"""Cross-ratios of points, hyperplanes and flats in R_{n,0,1}."""
