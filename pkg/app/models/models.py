from datetime import datetime
from typing import List, Optional
from sqlalchemy import DateTime, String, Integer, Float, ForeignKey, func
from sqlalchemy.orm import Mapped, mapped_column, relationship
from ..db.database import Base


class BenchRun(Base):
    __tablename__ = "bench_runs"

    id: Mapped[int] = mapped_column(primary_key=True, index=True)
    # corpus | scaling-gst | scaling-dp
    kind: Mapped[str] = mapped_column(String(32), nullable=False)
    source: Mapped[Optional[str]] = mapped_column(String(500), nullable=True)
    seed: Mapped[int] = mapped_column(Integer, default=0, server_default="0")
    counting: Mapped[str] = mapped_column(String(16), default="exact", server_default="exact")

    created_at: Mapped[datetime] = mapped_column(
        DateTime(timezone=True),
        server_default=func.now()
    )

    # Relationships
    results: Mapped[List["BenchResult"]] = relationship(back_populates="run", cascade="all, delete-orphan")
    scaling: Mapped[List["ScalingResult"]] = relationship(back_populates="run", cascade="all, delete-orphan")


class BenchResult(Base):
    __tablename__ = "bench_results"

    id: Mapped[int] = mapped_column(primary_key=True, index=True)
    run_id: Mapped[int] = mapped_column(ForeignKey("bench_runs.id", ondelete="CASCADE"), nullable=False, index=True)
    instance: Mapped[str] = mapped_column(String(500), nullable=False)
    method: Mapped[str] = mapped_column(String(32), nullable=False)
    k: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    status: Mapped[str] = mapped_column(String(8), nullable=False)
    size: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    width: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    elapsed_ms: Mapped[float] = mapped_column(Float, nullable=False)

    # Solver counters
    reps_tried: Mapped[int] = mapped_column(Integer, default=0, server_default="0")
    subsets_evaluated: Mapped[int] = mapped_column(Integer, default=0, server_default="0")
    dp_rows: Mapped[int] = mapped_column(Integer, default=0, server_default="0")
    max_table_rows: Mapped[int] = mapped_column(Integer, default=0, server_default="0")

    run: Mapped["BenchRun"] = relationship(back_populates="results")


class ScalingResult(Base):
    __tablename__ = "scaling_results"

    id: Mapped[int] = mapped_column(primary_key=True, index=True)
    run_id: Mapped[int] = mapped_column(ForeignKey("bench_runs.id", ondelete="CASCADE"), nullable=False, index=True)
    kind: Mapped[str] = mapped_column(String(8), nullable=False)
    # number of groups for gst, width for dp
    parameter: Mapped[int] = mapped_column(Integer, nullable=False)
    elapsed_ms: Mapped[float] = mapped_column(Float, nullable=False)
    ratio: Mapped[Optional[float]] = mapped_column(Float, nullable=True)
    rows: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    candidates: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    bound: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    slope: Mapped[Optional[float]] = mapped_column(Float, nullable=True)

    run: Mapped["BenchRun"] = relationship(back_populates="scaling")
