"""Catalog Orchestrator - runs catalog entries concurrently"""

import asyncio
from typing import Any, Callable, Dict, List, Optional, Sequence

import structlog

from .catalog import load_catalog, run_entry, run_sweep
from .config import Settings, get_settings
from .models import CatalogEntry, EntryReport

logger = structlog.get_logger(__name__)


class CatalogOrchestrator:
    """Runs catalog entries in worker threads and publishes per-entry events"""

    def __init__(self, settings: Optional[Settings] = None, seed: Optional[int] = None,
                 samples: Optional[int] = None, deg_p: int = 1, deg_phi: int = 2):
        self.settings = settings or get_settings()
        self.seed = seed
        self.samples = samples
        self.deg_p = deg_p
        self.deg_phi = deg_phi

        self.reports: Dict[str, EntryReport] = {}
        self.subscribers: Dict[str, List[Callable]] = {}
        self.running = False

    async def run_all(self, entries: Optional[Sequence[CatalogEntry]] = None,
                      include_sweep: bool = True) -> List[EntryReport]:
        """Run every entry; reports come back in catalog order whatever the scheduling"""
        entries = list(entries) if entries is not None else load_catalog()
        self.running = True
        logger.info(f"Running {len(entries)} catalog entries")

        tasks = [self._run_one(entry) for entry in entries]
        if include_sweep:
            tasks.append(self._run_sweep())
        try:
            results = await asyncio.gather(*tasks)
        finally:
            self.running = False

        mismatches = sum(len(r.mismatches) for r in results)
        logger.info(f"Catalog run finished: {len(results)} reports, {mismatches} mismatches")
        await self._publish("run_finished", {"reports": len(results), "mismatches": mismatches})
        return list(results)

    async def _run_one(self, entry: CatalogEntry) -> EntryReport:
        report = await asyncio.to_thread(
            run_entry, entry, self.seed, self.samples, self.deg_p, self.deg_phi, None, self.settings,
        )
        self.reports[entry.name] = report
        await self._publish("entry_finished", {"name": entry.name, "mismatches": len(report.mismatches)})
        return report

    async def _run_sweep(self) -> EntryReport:
        report = await asyncio.to_thread(run_sweep, self.settings)
        self.reports[report.name] = report
        await self._publish("entry_finished", {"name": report.name, "mismatches": len(report.mismatches)})
        return report

    async def _publish(self, event_type: str, data: Any) -> None:
        """Notify in-memory subscribers"""
        for callback in self.subscribers.get(event_type, []):
            try:
                if asyncio.iscoroutinefunction(callback):
                    await callback(data)
                else:
                    callback(data)
            except Exception as e:
                logger.error(f"Error in subscriber callback: {e}")

    def subscribe(self, event_type: str, callback: Callable) -> None:
        """Subscribe to event type"""
        self.subscribers.setdefault(event_type, []).append(callback)

    def run_sync(self, entries: Optional[Sequence[CatalogEntry]] = None) -> List[EntryReport]:
        """Blocking wrapper for callers without an event loop"""
        return asyncio.run(self.run_all(entries))

    def get_status(self) -> Dict[str, Any]:
        """Get orchestrator status"""
        return {
            "running": self.running,
            "entries": len(self.reports),
            "mismatches": sum(len(r.mismatches) for r in self.reports.values()),
        }

