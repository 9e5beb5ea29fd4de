"""Progress tracking service for grid runs."""

import logging
from datetime import datetime
from typing import Any, Dict, Optional

from pydantic import BaseModel

logger = logging.getLogger(__name__)


class ProgressSnapshot(BaseModel):
    """Point-in-time view of one job."""

    job_id: str
    status: str
    total_rows: int
    completed: int
    failed: int
    percent: float
    created_at: str
    completed_at: Optional[str] = None
    error: Optional[str] = None


class ProgressManager:
    """Manages progress tracking for grid jobs."""

    def __init__(self):
        self.jobs: Dict[str, Dict[str, Any]] = {}

    def create_job(self, job_id: str, total_rows: int) -> None:
        """Create a new job progress tracker."""
        self.jobs[job_id] = {
            "created_at": datetime.now(),
            "total_rows": total_rows,
            "completed": 0,
            "failed": 0,
            "status": "pending",
            "percent": 0.0,
        }
        logger.info(f"Created progress tracker for job {job_id}: {total_rows} rows")

    def record_row(self, job_id: str, agree: bool) -> None:
        """Count one finished row; disagreeing rows are also counted as failed."""
        if job_id not in self.jobs:
            logger.warning(f"Job {job_id} not found in progress tracker")
            return

        job = self.jobs[job_id]
        previous_decile = int(job["percent"] // 10)
        job["completed"] += 1
        if not agree:
            job["failed"] += 1
        job["percent"] = job["completed"] / job["total_rows"] * 100 if job["total_rows"] else 100.0
        job["status"] = "running"

        if int(job["percent"] // 10) > previous_decile:
            logger.info(f"Job {job_id}: {job['percent']:.1f}% ({job['completed']}/{job['total_rows']}), {job['failed']} disagreeing")
        else:
            logger.debug(f"Job {job_id}: row {job['completed']}/{job['total_rows']}")

    def complete_job(self, job_id: str) -> None:
        """Mark job as completed."""
        if job_id not in self.jobs:
            logger.warning(f"Job {job_id} not found in progress tracker")
            return

        job = self.jobs[job_id]
        job["status"] = "completed"
        job["percent"] = 100.0
        job["completed_at"] = datetime.now()

        logger.info(f"Job {job_id} completed: {job['completed']} rows, {job['failed']} disagreeing")

    def fail_job(self, job_id: str, error: str) -> None:
        """Mark job as failed."""
        if job_id not in self.jobs:
            logger.warning(f"Job {job_id} not found in progress tracker")
            return

        job = self.jobs[job_id]
        job["status"] = "failed"
        job["error"] = error
        job["failed_at"] = datetime.now()

        logger.error(f"Job {job_id} failed: {error}")

    def get_progress(self, job_id: str) -> Optional[ProgressSnapshot]:
        """Get current progress for a job."""
        if job_id not in self.jobs:
            return None

        job = self.jobs[job_id]
        return ProgressSnapshot(
            job_id=job_id,
            status=job["status"],
            total_rows=job["total_rows"],
            completed=job["completed"],
            failed=job["failed"],
            percent=job["percent"],
            created_at=job["created_at"].isoformat(),
            completed_at=job["completed_at"].isoformat() if "completed_at" in job else None,
            error=job.get("error"),
        )

    def cleanup_old_jobs(self, max_age_hours: int = 24) -> int:
        """Clean up old completed or failed jobs."""
        cutoff_time = datetime.now().timestamp() - (max_age_hours * 3600)

        stale = [
            job_id
            for job_id, job in self.jobs.items()
            if job["status"] in ("completed", "failed") and job["created_at"].timestamp() < cutoff_time
        ]
        for job_id in stale:
            del self.jobs[job_id]

        if stale:
            logger.info(f"Cleaned up {len(stale)} old jobs")
        return len(stale)


# Global progress manager instance
progress_manager = ProgressManager()
