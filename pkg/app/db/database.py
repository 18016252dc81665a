from contextlib import contextmanager
from typing import Iterator, Optional
from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker
from app.core.config import settings


def make_engine(url: Optional[str] = None) -> Engine:
    url = url or settings.database_url
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, connect_args=connect_args)


engine = make_engine()

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)

Base = declarative_base()


def init_db(bind: Optional[Engine] = None) -> None:
    Base.metadata.create_all(bind=bind or engine)


@contextmanager
def get_db(bind: Optional[Engine] = None) -> Iterator[Session]:
    """Session on `bind` (the configured engine by default), closed on exit."""
    db = SessionLocal(bind=bind) if bind is not None else SessionLocal()
    try:
        yield db
    finally:
        db.close()
