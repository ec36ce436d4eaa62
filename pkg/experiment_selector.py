import os
import importlib
import inspect
import logging
from typing import Any, Dict, List, Optional

from errors import ConfigError


# Experiment base class that all experiments should inherit from
class Experiment:
    """Base class for all experiments"""

    # Class variables for experiment metadata
    EXPERIMENT_KIND = "base"
    EXPERIMENT_NAME = "Base Experiment"
    EXPERIMENT_DESCRIPTION = "Base experiment class that all experiments should inherit from"
    EXPERIMENT_PARAMS = {}  # Default parameters

    def __init__(self, params: Optional[Dict[str, Any]] = None, jobs: int = 1):
        """Initialize the experiment with its parameters and parallelism degree"""
        self.params = params or {}
        self.jobs = jobs
        self.logger = logging.getLogger(self.__class__.__name__)

        unknown = set(self.params) - set(self.EXPERIMENT_PARAMS)
        if unknown:
            raise ConfigError(f"Unknown parameters for {self.EXPERIMENT_KIND}: {sorted(unknown)}",
                              param=sorted(unknown)[0])

    def _get_param_value(self, param_name):
        """Helper method to extract parameter values"""
        if param_name in self.params:
            if isinstance(self.params[param_name], dict) and "value" in self.params[param_name]:
                return self.params[param_name]["value"]
            return self.params[param_name]

        # Fallback to default params
        if param_name in self.EXPERIMENT_PARAMS:
            if isinstance(self.EXPERIMENT_PARAMS[param_name], dict) and "value" in self.EXPERIMENT_PARAMS[param_name]:
                return self.EXPERIMENT_PARAMS[param_name]["value"]
            return self.EXPERIMENT_PARAMS[param_name]

        self.logger.warning(f"Parameter {param_name} not found, using None")
        return None

    def run(self) -> List[Any]:
        """Run the experiment and return its records in output order"""
        self.logger.info(f"Running {self.EXPERIMENT_NAME} with {self.jobs} job(s)")
        records = self._run_experiment()
        self.logger.info(f"{self.EXPERIMENT_NAME} produced {len(records)} records")
        return records

    def _run_experiment(self) -> List[Any]:
        """Experiment body - to be implemented by subclasses"""
        raise NotImplementedError("Experiment must implement _run_experiment method")


class ExperimentSelector:
    """Handles discovery, configuration and running of experiments"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.experiments = {}  # Available experiments keyed by kind

        # Directory where experiment modules are stored
        self.experiment_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "experiments")

        # Discover available experiments
        self._discover_experiments()

    def _discover_experiments(self):
        """
        Discover available experiment modules in the experiments package
        """
        self.experiments = {}

        for filename in sorted(os.listdir(self.experiment_dir)):
            if filename.endswith(".py") and not filename.startswith("_"):
                module_name = filename[:-3]  # Remove .py extension

                try:
                    module = importlib.import_module(f"experiments.{module_name}")

                    # Find experiment classes in the module
                    for _, obj in inspect.getmembers(module):
                        if (inspect.isclass(obj) and
                                issubclass(obj, Experiment) and
                                obj is not Experiment and
                                obj.__module__ == module.__name__):

                            self.experiments[obj.EXPERIMENT_KIND] = obj
                            self.logger.debug(f"Discovered experiment: {obj.EXPERIMENT_NAME} from {module_name}")

                except Exception as e:
                    self.logger.error(f"Error loading experiment module {module_name}: {str(e)}")

        self.logger.debug(f"Discovered {len(self.experiments)} experiments")

    def list_experiments(self):
        """
        List available experiments

        Returns:
            List of experiment metadata
        """
        return [
            {
                "kind": kind,
                "name": experiment_class.EXPERIMENT_NAME,
                "description": experiment_class.EXPERIMENT_DESCRIPTION
            }
            for kind, experiment_class in sorted(self.experiments.items())
        ]

    def get_experiment_params(self, kind):
        """
        Get parameters for an experiment

        Args:
            kind: Experiment kind, e.g. "two-qubit"

        Returns:
            Dictionary of parameters
        """
        if kind not in self.experiments:
            self.logger.error(f"Experiment {kind} not found")
            return {}

        return {name: dict(spec) for name, spec in self.experiments[kind].EXPERIMENT_PARAMS.items()}

    def create_experiment(self, kind, params=None, jobs=1):
        """
        Build a configured experiment instance

        Args:
            kind: Experiment kind
            params: Parameter overrides
            jobs: Parallelism degree

        Returns:
            Experiment instance

        Raises:
            ConfigError: unknown kind or invalid parameters
        """
        if kind not in self.experiments:
            raise ConfigError(f"Experiment {kind} not found")
        return self.experiments[kind](params, jobs)

    def run_experiment(self, kind, params=None, jobs=1):
        """Create and run an experiment, returning its records"""
        experiment = self.create_experiment(kind, params, jobs)
        self.logger.info(f"Starting experiment: {experiment.EXPERIMENT_NAME}")
        return experiment.run()
