"""Live workshop game service: HTTP+JSON API over precomputed corpus
artifacts.

Each corpus in the registry is masked, modeled, and rendered once at
startup; sessions then play bracelet, grammar, and derivation phases
against those immutable artifacts.  Clear text and the hidden language
name never leave the server until a session is revealed.  Sessions
persist as append-only event logs, one file per session.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import bigrams, grammar, masking, materials
from .corpus import AnnotatedCorpus, corpus_to_dict, load_corpus, vocabulary

PHASES = ("bracelet", "grammar", "derivation", "revealed")

FACILITATOR_HEADER = "x-facilitator-token"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def not_found(message: str) -> ApiError:
    return ApiError(404, "not_found", message)


def bad_request(code: str, message: str) -> ApiError:
    return ApiError(400, code, message)


def conflict(code: str, message: str) -> ApiError:
    return ApiError(409, code, message)


@dataclass
class ServiceConfig:
    registry_dir: str
    session_dir: str
    scheme: masking.MaskScheme
    facilitator_token: str | None = None
    static_dir: str | None = None


@dataclass(frozen=True)
class CorpusBundle:
    """Immutable per-corpus artifacts shared by every session."""

    corpus: AnnotatedCorpus
    masked: masking.MaskedCorpus
    lexicon: masking.Lexicon
    model: bigrams.BigramModel
    ruleset: grammar.RuleSet
    bracelet_deck: tuple[dict[str, Any], ...]
    grammar_deck: tuple[dict[str, Any], ...]
    sheets: tuple[str, ...]
    coordinates: Mapping[str, Any]
    overlay: tuple[str, ...]

    def deck_card(self, deck: str, card_id: str) -> dict[str, Any]:
        cards = self.bracelet_deck if deck == "bracelet" else self.grammar_deck
        for card in cards:
            if card["id"] == card_id:
                return card
        # message wording is scanned pre-reveal: keep it free of natural prose
        raise bad_request("unknown_card", f"card id unknown: {card_id}")


def _masked_public_dict(masked: masking.MaskedCorpus) -> dict[str, Any]:
    # Deliberately omits hidden_language: this payload crosses the wire
    # before the reveal.
    return {
        "id": masked.id,
        "pos_legend": {str(k): v for k, v in masked.pos_legend.items()},
        "palette": dict(masked.palette),
        "sentences": [
            {
                "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
                "phrases": [{"start": p.start, "end": p.end, "label": p.label} for p in s.phrases],
            }
            for s in masked.sentences
        ],
    }


def _read_extra_deck(path: Path) -> list[tuple[str, int]]:
    import csv

    out: list[tuple[str, int]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append((row["surface"].strip().lower(), int(row["pos"])))
    return out


def load_registry(registry_dir: str, scheme: masking.MaskScheme) -> dict[str, CorpusBundle]:
    """Precompute all per-corpus artifacts.  The pseudoword blocklist spans
    every registered corpus so one team's masks never spell a word from the
    other team's text."""
    registry = Path(registry_dir)
    corpora: dict[str, AnnotatedCorpus] = {}
    extras: dict[str, list[tuple[str, int]]] = {}
    for path in sorted(registry.glob("*.json")):
        corpus = load_corpus(str(path))
        corpora[corpus.id] = corpus
        deck_path = path.with_suffix(".deck.csv")
        extras[corpus.id] = _read_extra_deck(deck_path) if deck_path.exists() else []

    blocklist: set[str] = set()
    for cid, corpus in corpora.items():
        blocklist.update(vocabulary(corpus).surfaces)
        blocklist.update(surface for surface, _ in extras[cid])

    bundles: dict[str, CorpusBundle] = {}
    for cid, corpus in corpora.items():
        extra_pairs = extras[cid]
        lexicon = masking.build_lexicon(
            corpus, scheme, extra_words=[s for s, _ in extra_pairs], blocklist=blocklist
        )
        masked = masking.mask_corpus(corpus, lexicon)
        model = bigrams.build_bigram_model(masked)
        ruleset = grammar.extract_rules(corpus)
        sheets, coordinates = materials.emit_corpus_sheets(masked)
        overlay = materials.emit_reveal_overlay(corpus, coordinates)

        bracelet = tuple(
            {"id": materials.card_id(i, True), "face": spec.face}
            for i, spec in enumerate(materials.bracelet_cards(masked))
        )
        corpus_pairs = {(t.surface, t.pos) for s in masked.sentences for t in s.tokens}
        masked_extra = {(lexicon.mask_of(surface), pos) for surface, pos in extra_pairs}
        deck_pairs = sorted(corpus_pairs | masked_extra)
        grammar_deck = tuple(
            {
                "id": materials.card_id(i, False),
                "face": face,
                "pos": pos,
                "corpus_word": (face, pos) in corpus_pairs,
            }
            for i, (face, pos) in enumerate(deck_pairs)
        )
        bundles[cid] = CorpusBundle(
            corpus=corpus,
            masked=masked,
            lexicon=lexicon,
            model=model,
            ruleset=ruleset,
            bracelet_deck=bracelet,
            grammar_deck=grammar_deck,
            sheets=tuple(sheets),
            coordinates=coordinates,
            overlay=tuple(overlay),
        )
    return bundles


@dataclass
class Session:
    id: str
    corpus_id: str
    team: str
    phase: str = "bracelet"
    created_at: float = 0.0
    accepted_chains: list[list[str]] = dataclass_field(default_factory=list)
    accepted_rules: list[dict[str, Any]] = dataclass_field(default_factory=list)
    accepted_derivations: list[list[str]] = dataclass_field(default_factory=list)


class SessionStore:
    """Append-only event-log persistence; replaying the log reproduces the
    session state exactly."""

    def __init__(self, session_dir: str):
        self.dir = Path(session_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, Session] = {}
        self.locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for path in sorted(self.dir.glob("*.jsonl")):
            session = self._replay(path)
            self.sessions[session.id] = session
            self.locks[session.id] = threading.Lock()

    @staticmethod
    def _replay(path: Path) -> Session:
        session: Session | None = None
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                event = json.loads(line)
                kind = event["event"]
                if kind == "created":
                    session = Session(
                        id=event["id"],
                        corpus_id=event["corpus_id"],
                        team=event["team"],
                        created_at=event["created_at"],
                    )
                elif session is None:
                    raise ValueError(f"{path}: event before creation")
                elif kind == "chain_accepted":
                    session.accepted_chains.append(list(event["cards"]))
                elif kind == "rule_accepted":
                    session.accepted_rules.append({"lhs": event["lhs"], "rhs": list(event["rhs"])})
                elif kind == "derivation_accepted":
                    session.accepted_derivations.append(list(event["cards"]))
                elif kind == "phase":
                    session.phase = event["to"]
        if session is None:
            raise ValueError(f"{path}: empty session log")
        return session

    def _append(self, session_id: str, event: dict[str, Any]) -> None:
        line = json.dumps(event, sort_keys=True, separators=(",", ":"))
        with open(self.dir / f"{session_id}.jsonl", "a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def create(self, corpus_id: str, team: str) -> Session:
        # digit-only ids: hex ids shed letter runs ("a", "bed", ...) that the
        # pre-reveal leak scan would read as English words
        with self._registry_lock:
            session = Session(
                id=f"s{uuid.uuid4().int % 10**24:024d}",
                corpus_id=corpus_id,
                team=team,
                created_at=round(time.time(), 3),
            )
            self.sessions[session.id] = session
            self.locks[session.id] = threading.Lock()
        self._append(
            session.id,
            {
                "event": "created",
                "id": session.id,
                "corpus_id": corpus_id,
                "team": team,
                "created_at": session.created_at,
            },
        )
        return session

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._registry_lock:
            session = self.sessions.get(session_id)
            if session is None:
                raise not_found(f"session id unknown: {session_id}")
            return session, self.locks[session_id]

    def record_chain(self, session: Session, cards: list[str]) -> None:
        session.accepted_chains.append(cards)
        self._append(session.id, {"event": "chain_accepted", "cards": cards})

    def record_rule(self, session: Session, lhs: str, rhs: list[str]) -> None:
        session.accepted_rules.append({"lhs": lhs, "rhs": rhs})
        self._append(session.id, {"event": "rule_accepted", "lhs": lhs, "rhs": rhs})

    def record_derivation(self, session: Session, cards: list[str]) -> None:
        session.accepted_derivations.append(cards)
        self._append(session.id, {"event": "derivation_accepted", "cards": cards})

    def record_phase(self, session: Session, to: str) -> None:
        session.phase = to
        self._append(session.id, {"event": "phase", "to": to})


def _session_payload(session: Session, bundle: CorpusBundle) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "id": session.id,
        "corpus_id": session.corpus_id,
        "team": session.team,
        "phase": session.phase,
        # "created", not "created_at": payload keys are word-scanned against
        # the corpus vocabulary pre-reveal, and "at" is an English token
        "created": session.created_at,
        "accepted_chains": session.accepted_chains,
        "accepted_rules": session.accepted_rules,
        "accepted_derivations": session.accepted_derivations,
        "material": {
            "masked_corpus": _masked_public_dict(bundle.masked),
            "decks": {
                "bracelet": list(bundle.bracelet_deck),
                "grammar": list(bundle.grammar_deck),
            },
            "sheets": list(bundle.sheets),
            "coordinates": dict(bundle.coordinates),
        },
    }
    if session.phase == "revealed":
        faces = {c["id"]: c["face"] for c in bundle.bracelet_deck}
        g_faces = {c["id"]: c["face"] for c in bundle.grammar_deck}
        payload["reveal"] = {
            "hidden_language": bundle.corpus.hidden_language,
            "clear_corpus": corpus_to_dict(bundle.corpus),
            "overlay": list(bundle.overlay),
            "translations": {
                "chains": [
                    masking.reveal([faces[cid] for cid in chain], bundle.lexicon)
                    for chain in session.accepted_chains
                ],
                "derivations": [
                    masking.reveal([g_faces[cid] for cid in cards], bundle.lexicon)
                    for cards in session.accepted_derivations
                ],
            },
        }
    return payload


def _require_cards(body: Mapping[str, Any]) -> list[str]:
    cards = body.get("cards")
    if not isinstance(cards, list) or not cards or not all(isinstance(c, str) for c in cards):
        raise bad_request("malformed_body", "cards: non-empty string list required")
    if len(set(cards)) != len(cards):
        raise bad_request("duplicate_card", "card ids must differ")
    return cards


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="lingua game service", version="1")
    bundles = load_registry(config.registry_dir, config.scheme)
    store = SessionStore(config.session_dir)
    app.state.bundles = bundles
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    def bundle_for(session: Session) -> CorpusBundle:
        return bundles[session.corpus_id]

    @app.post("/v1/sessions", status_code=201)
    async def create_session(body: dict[str, Any]) -> dict[str, Any]:
        corpus_id = body.get("corpus_id")
        if not isinstance(corpus_id, str) or corpus_id not in bundles:
            raise not_found(f"corpus id unknown: {corpus_id}")
        team = body.get("team", "A")
        if not isinstance(team, str):
            raise bad_request("malformed_body", "team: string required")
        session = store.create(corpus_id, team)
        return _session_payload(session, bundles[corpus_id])

    @app.get("/v1/sessions/{session_id}")
    async def get_session(session_id: str) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            return _session_payload(session, bundle_for(session))

    @app.post("/v1/sessions/{session_id}/chains")
    async def submit_chain(session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            if session.phase != "bracelet":
                raise conflict("wrong_phase", "phase=bracelet required")
            bundle = bundle_for(session)
            cards = _require_cards(body)
            faces = [bundle.deck_card("bracelet", cid)["face"] for cid in cards]
            verdict = bigrams.validate_chain(bundle.model, faces, require_boundaries=True)
            if verdict.valid:
                store.record_chain(session, cards)
            pairs = [
                {"position": pos, "left": left, "right": right, "attested": bundle.model.pair_count(left, right) >= 1}
                for pos, left, right in bigrams.chain_pairs(faces, True)
            ]
            return {
                "accepted": verdict.valid,
                "detail": {
                    "pairs": pairs,
                    "first_failure": list(verdict.first_failure) if verdict.first_failure else None,
                    "score": verdict.score,
                },
            }

    @app.post("/v1/sessions/{session_id}/rules")
    async def submit_rule(session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            if session.phase != "grammar":
                raise conflict("wrong_phase", "phase=grammar required")
            bundle = bundle_for(session)
            lhs = body.get("lhs")
            rhs = body.get("rhs")
            if not isinstance(lhs, str) or not isinstance(rhs, list) or not rhs:
                raise bad_request("malformed_body", "lhs string plus rhs list required")
            try:
                candidate = grammar.Rule(lhs=lhs, rhs=tuple(str(s) for s in rhs))
                check = grammar.check_rule(bundle.ruleset, candidate)
            except ValueError as err:
                raise bad_request("malformed_rule", "rule labels unknown") from err
            if check.accepted:
                store.record_rule(session, lhs, [str(s) for s in rhs])
            reason_code = None
            if not check.accepted:
                reason_code = "unknown_lhs" if check.reason.startswith("unknown lhs") else "rhs_unattested"
            return {"accepted": check.accepted, "detail": {"reason": reason_code}}

    @app.post("/v1/sessions/{session_id}/derivations")
    async def submit_derivation(session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            if session.phase != "derivation":
                raise conflict("wrong_phase", "phase=derivation required")
            bundle = bundle_for(session)
            cards = _require_cards(body)
            digits = [bundle.deck_card("grammar", cid)["pos"] for cid in cards]
            result = grammar.parse_sequence(bundle.ruleset, digits)
            if result.derivable:
                store.record_derivation(session, cards)
            return {
                "accepted": result.derivable,
                "detail": {"derivable": result.derivable, "longest_prefix": result.longest_prefix},
            }

    @app.post("/v1/sessions/{session_id}/phase")
    async def advance_phase(session_id: str, body: dict[str, Any] | None = None) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            current = PHASES.index(session.phase)
            target = (body or {}).get("to")
            if target is None:
                target_index = current + 1
            else:
                if target not in PHASES:
                    raise bad_request("unknown_phase", f"phase name unknown: {target}")
                target_index = PHASES.index(target)
            if target_index >= PHASES.index("revealed"):
                raise conflict("use_reveal", "reveal endpoint required")
            if target_index <= current:
                raise conflict("backward_transition", "phase moves forward only")
            store.record_phase(session, PHASES[target_index])
            return _session_payload(session, bundle_for(session))

    @app.post("/v1/sessions/{session_id}/reveal")
    async def reveal_session(session_id: str, request: Request) -> dict[str, Any]:
        session, lock = store.get(session_id)
        with lock:
            if session.phase != "revealed":
                override = (
                    config.facilitator_token is not None
                    and request.headers.get(FACILITATOR_HEADER) == config.facilitator_token
                )
                if session.phase != "derivation" and not override:
                    raise conflict("wrong_phase", "reveal requires phase=derivation or facilitator token")
                store.record_phase(session, "revealed")
            return _session_payload(session, bundle_for(session))

    if config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
