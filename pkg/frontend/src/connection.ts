// WebSocket wrapper with an injectable socket factory and a message log.
// At most one record_point is in flight at a time (the state reducer
// tracks that); what_if may interleave because it is pure server-side.

import type { ClientMessage, ServerMessage } from "./protocol.js";
import { parseServerMessage } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionEvents {
  onOpen?: () => void;
  onClose?: () => void;
  onMessage: (msg: ServerMessage) => void;
}

export class LiveConnection {
  private socket: SocketLike | null = null;
  /** Every message in both directions, in order; used by equivalence checks. */
  readonly log: Array<{ dir: "sent" | "received"; msg: ClientMessage | ServerMessage }> = [];

  constructor(private readonly factory: SocketFactory) {}

  connect(url: string, events: ConnectionEvents): void {
    const socket = this.factory(url);
    this.socket = socket;
    socket.onopen = () => events.onOpen?.();
    socket.onclose = () => {
      this.socket = null;
      events.onClose?.();
    };
    socket.onmessage = (ev: { data: string }) => {
      const msg = parseServerMessage(ev.data);
      if (msg !== null) {
        this.log.push({ dir: "received", msg });
        events.onMessage(msg);
      }
    };
  }

  get isOpen(): boolean {
    return this.socket !== null;
  }

  send(msg: ClientMessage): boolean {
    if (this.socket === null) {
      return false;
    }
    this.log.push({ dir: "sent", msg });
    this.socket.send(JSON.stringify(msg));
    return true;
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}

export function liveUrl(origin: string): string {
  return origin.replace(/^http/, "ws").replace(/\/$/, "") + "/live";
}
