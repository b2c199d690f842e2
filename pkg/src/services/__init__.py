from services.hodge_service import HodgeService, hodge_service

__all__ = [
    "HodgeService",
    "hodge_service",
]
