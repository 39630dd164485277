"""Graph algorithms, learner, sampling and analysis."""
