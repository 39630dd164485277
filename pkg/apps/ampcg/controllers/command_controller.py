import sys
from typing import Optional, TextIO

import structlog
from rich.console import Console

from ..adapters.cg_text_adapter import format_cg, read_graph, to_dot, write_text
from ..adapters.dataset_csv_adapter import read_dataset, write_dataset
from ..core.exceptions import CliUsageError, handle_errors
from ..core.logging_config import log_query_stats
from ..models.cli import CliConfig, OutputFormat
from ..models.graph import ChainGraph, GraphLike
from ..models.report import VerificationReport
from ..models.separation import SeparationQuery
from ..oracles import counting_oracle, data_oracle, graph_oracle
from ..services import analysis_service, gaussian_service, graph_service, learner_service
from ..services.separation_service import separated

log = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_NOT_CHAIN = 2


class CommandController:
    """One method per subcommand; each returns the process exit status.

    Results go to `out` (stdout by default), usage statistics to `err`.
    """

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self._out = out
        self._err = err

    # streams are looked up per call so redirected stdout/stderr are honoured
    @property
    def out(self) -> Console:
        return Console(file=self._out or sys.stdout, markup=False, emoji=False, highlight=False, soft_wrap=True)

    @property
    def err(self) -> Console:
        return Console(file=self._err or sys.stderr, markup=False, emoji=False, highlight=False, soft_wrap=True)

    def _require(self, config: CliConfig, *fields: str) -> None:
        missing = [f"--{name.replace('_', '-')}" for name in fields if getattr(config, name) is None]
        if missing:
            raise CliUsageError(f"{config.command}: missing {', '.join(missing)}")

    def _emit(self, config: CliConfig, text: str) -> None:
        if config.output is not None:
            write_text(config.output, text)
        else:
            self.out.print(text, end="")

    def _render(self, config: CliConfig, graph: GraphLike) -> str:
        return to_dot(graph) if config.format is OutputFormat.dot else format_cg(graph)

    # ---------- subcommands ------------------------------------------------
    @handle_errors("learn_command")
    def learn(self, config: CliConfig) -> int:
        if (config.graph is None) == (config.data is None):
            raise CliUsageError("learn: give exactly one of --graph or --data")
        if config.graph is not None:
            oracle = counting_oracle(graph_oracle(read_graph(config.graph)))
        else:
            oracle = counting_oracle(data_oracle(read_dataset(config.data), config.alpha))

        result = learner_service.learn(oracle)
        self._emit(config, self._render(config, result.graph))

        stats = oracle.stats
        sizes = " ".join(f"|Z|={k}:{v}" for k, v in sorted(stats.by_size.items()))
        self.err.print(f"queries: {stats.total} ({oracle.inner_calls} distinct) {sizes}".rstrip())
        log_query_stats(stats.total, stats.by_size, distinct=oracle.inner_calls)

        if not result.is_chain_graph:
            for issue in result.issues():
                self.err.print(f"warning: {issue}")
            return EXIT_NOT_CHAIN
        return EXIT_OK

    @handle_errors("sep_command")
    def sep(self, config: CliConfig) -> int:
        self._require(config, "graph")
        g = read_graph(config.graph)
        query = SeparationQuery.of(g, config.x, config.y, config.z)
        self.out.print("SEPARATED" if separated(g, query) else "CONNECTED")
        return EXIT_OK

    @handle_errors("equiv_command")
    def equiv(self, config: CliConfig) -> int:
        self._require(config, "graph", "other_graph")
        first, second = read_graph(config.graph), read_graph(config.other_graph)
        equivalent = graph_service.triplex_equivalent(first, second)
        self.out.print("EQUIVALENT" if equivalent else "NOT EQUIVALENT")
        return EXIT_OK if equivalent else EXIT_FAILED

    @handle_errors("sample_command")
    def sample(self, config: CliConfig) -> int:
        self._require(config, "graph")
        cg = ChainGraph.from_graph(read_graph(config.graph))
        params = gaussian_service.random_params(cg, config.seed)
        dataset = gaussian_service.sample(params, config.n, config.seed)
        write_dataset(config.output if config.output is not None else self.out.file, dataset)
        return EXIT_OK

    @handle_errors("verify_command")
    def verify(self, config: CliConfig) -> int:
        if config.graph is None and not config.fixtures:
            raise CliUsageError("verify: give --graph and/or --fixtures")
        report = VerificationReport()
        if config.graph is not None:
            g = read_graph(config.graph)
            valid = graph_service.is_chain_graph(g)
            report.add("chain_graph", valid, None if valid else "graph has a semidirected cycle")
            if valid:
                cg = ChainGraph(graph=g)
                if config.data is not None:
                    dataset = read_dataset(config.data)
                    if dataset.names != g.names:
                        raise CliUsageError("verify: dataset columns do not match the graph's nodes in order")
                    report.extend(analysis_service.check_c1_c2(data_oracle(dataset, config.alpha), cg, pairwise=True))
                else:
                    report.extend(analysis_service.check_c1_c2(graph_oracle(cg), cg))
        if config.fixtures:
            report.extend(analysis_service.run_fixtures())
        self.out.print(report.render())
        return EXIT_OK if report.passed else EXIT_FAILED

    @handle_errors("enumerate_command")
    def enumerate(self, config: CliConfig) -> int:
        names = analysis_service.default_names(config.n)
        blocks = [format_cg(cg) for cg in analysis_service.enumerate_cgs(names)]
        self.out.print("\n".join(blocks), end="")
        log.info("graphs_enumerated", n_nodes=config.n, count=len(blocks))
        return EXIT_OK


controller = CommandController()


def cmd_learn(config: CliConfig) -> int:
    return controller.learn(config)


def cmd_sep(config: CliConfig) -> int:
    return controller.sep(config)


def cmd_equiv(config: CliConfig) -> int:
    return controller.equiv(config)


def cmd_sample(config: CliConfig) -> int:
    return controller.sample(config)


def cmd_verify(config: CliConfig) -> int:
    return controller.verify(config)


def cmd_enumerate(config: CliConfig) -> int:
    return controller.enumerate(config)
