"""End-to-end learning from sampled Gaussian data"""

import numpy as np
import pytest
from rich import print

from apps.ampcg.oracles import data_oracle
from apps.ampcg.services.analysis_service import default_names, random_chain_graph
from apps.ampcg.services.gaussian_service import random_params, sample
from apps.ampcg.services.graph_service import triplex_equivalent
from apps.ampcg.services.learner_service import learn

SEEDS = range(50)
SAMPLE_SIZE = 20000
ALPHA = 0.01


@pytest.mark.slow
class TestStatisticalRecovery:
    def test_recovers_most_random_graphs(self):
        recovered = 0
        for seed in SEEDS:
            rng = np.random.default_rng(seed)
            n = int(rng.integers(5, 7))
            truth = random_chain_graph(default_names(n), rng, max_degree=3, clique_components=True)
            dataset = sample(random_params(truth, seed), SAMPLE_SIZE, seed)
            result = learn(data_oracle(dataset, ALPHA))
            if result.is_chain_graph and triplex_equivalent(result.graph, truth):
                recovered += 1
        print(f"[bold green]✓ recovered {recovered}/{len(SEEDS)} graphs")
        assert recovered >= 0.8 * len(SEEDS)
