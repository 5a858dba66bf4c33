#!/usr/bin/env python3
"""Scripted walkthrough of the live session protocol.

Drives a session the way the coach console does: start, record a few
points, fix a data-entry mistake with undo, and ask a what-if question
about the next two points. Uses the engine directly; the same messages
travel as JSON over the websocket in production.
"""
from tennis_momentum.session import SessionHub

hub = SessionHub()
session, ack = hub.open({
    "type": "start_session",
    "profiles": {
        "p1": {"label": "Vela", "prior_matches": [
            {"points_won_on_serve": 56, "serve_attempts": 80, "total_points_in_match": 102}]},
        "p2": {"label": "Sorel", "prior_matches": [
            {"points_won_on_serve": 46, "serve_attempts": 80, "total_points_in_match": 96}]},
    },
    "first_server": 1,
})
print(f"session {ack['session_id']} open, {ack['score']['server']} to serve\n")


def show(reply):
    kind = reply["type"]
    if kind == "error":
        print(f"  -> error on {reply['field']}: {reply['message']}")
        return
    score = reply["score"]
    if kind == "projection":
        print(f"  -> projection of {len(reply['samples'])} points "
              f"(hypothetical score {score['points']})")
        return
    sample = reply["sample"]
    tag = reply.get("event", "point")
    if sample is None:
        print(f"  -> {tag}: back to the start")
        return
    print(f"  -> {tag}: point {sample['point_index']}, "
          f"tmm Vela {sample['p1']['tmm']:.3f} / Sorel {sample['p2']['tmm']:.3f}, "
          f"game score {score['points']}")


print("Vela opens with an ace:")
show(session.handle({"type": "record_point", "server": 1, "winner": 1,
                     "rally_count": 0, "is_ace": True}))

print("Sorel grinds out a 7-shot rally:")
show(session.handle({"type": "record_point", "server": 1, "winner": 2,
                     "rally_count": 7}))

print("Oops, that rally was actually 5 shots; undo and re-enter:")
show(session.handle({"type": "undo"}))
show(session.handle({"type": "record_point", "server": 1, "winner": 2,
                     "rally_count": 5}))

print("Coach asks: if Vela takes the next two points quickly, where is momentum?")
show(session.handle({
    "type": "what_if",
    "points": [
        {"server": 1, "winner": 1, "rally_count": 1},
        {"server": 1, "winner": 1, "rally_count": 0, "is_ace": True},
    ],
}))

print("Session state is untouched by the projection:")
print(f"  points played for real: {session.score.total_points_played}")

print("\nValidation mirrors the point rules (ace by the returner is rejected):")
show(session.handle({"type": "record_point", "server": 1, "winner": 2,
                     "rally_count": 0, "is_ace": True}))

session.handle({"type": "end_session"})
hub.close(session)
print("\nsession closed")
