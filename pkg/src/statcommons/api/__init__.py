from .config import ApiConfig, RemoteEndpoint, load_api_config
from .federation import FederatedSeries, federated_series
from .server import create_app

__all__ = [
    "ApiConfig",
    "FederatedSeries",
    "RemoteEndpoint",
    "create_app",
    "federated_series",
    "load_api_config",
]
