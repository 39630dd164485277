from .base_oracle import BaseOracle, IndependenceOracle  # noqa
from .graph_oracle import GraphOracle, graph_oracle  # noqa
from .counting_oracle import CountingOracle, counting_oracle  # noqa
from .data_oracle import DataOracle, data_oracle  # noqa
