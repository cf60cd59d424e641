import logging
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware

from app.config.settings import CORS_ORIGINS, LOG_LEVEL
from app.routes.algebra_routes import algebra_router
from app.routes.chain_routes import chain_router
from app.routes.frame_routes import frame_router
from app.routes.group_routes import group_router
from app.routes.hermitian_routes import hermitian_router
from app.routes.lie_routes import lie_router
from app.routes.normalform_routes import normalform_router
from app.routes.series_routes import series_router

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

app = FastAPI(title="CR codimension-2 toolkit")

app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

@app.middleware("http")
async def add_process_time_header(request: Request, call_next):
    start_time = time.time()
    response = await call_next(request)
    process_time = time.time() - start_time
    response.headers["X-Process-Time"] = str(process_time)
    return response

@app.get("/health")
async def health():
    return {"status": "ok"}

app.include_router(algebra_router)
app.include_router(lie_router)
app.include_router(group_router)
app.include_router(hermitian_router)
app.include_router(series_router)
app.include_router(normalform_router)
app.include_router(frame_router)
app.include_router(chain_router)
