/**
 * Session client: feeds frames from a line transport to the UI in order.
 *
 * Frames render strictly in frame_seq order; anything at or below the last
 * seen sequence number (a replay after reconnect) is dropped.  At most one
 * command is in flight: further input is queued until the settled frame of
 * the previous command arrives.
 */

import {
  Command,
  FrameMessage,
  LineBuffer,
  ProtocolError,
  isProtocolError,
  parseFrame,
  serializeCommand,
} from "./protocol.js";

export interface Transport {
  send(line: string): void;
  close(): void;
}

export interface ClientHandlers {
  onFrame(frame: FrameMessage): void;
  onEvent?(event: { kind: string; payload: unknown }): void;
  onError?(error: ProtocolError | Error): void;
}

export class ClientSession {
  private transport: Transport;
  private handlers: ClientHandlers;
  private buffer = new LineBuffer();
  private lastSeq = 0;
  private awaitingSettle = false;
  private queue: Command[] = [];
  lastFrame: FrameMessage | null = null;

  constructor(transport: Transport, handlers: ClientHandlers) {
    this.transport = transport;
    this.handlers = handlers;
  }

  /** Feed raw bytes/text from the socket. */
  receive(chunk: string): void {
    for (const line of this.buffer.push(chunk)) {
      let msg: FrameMessage | ProtocolError;
      try {
        msg = parseFrame(line);
      } catch (err) {
        this.handlers.onError?.(err as Error);
        continue;
      }
      if (isProtocolError(msg)) {
        this.awaitingSettle = false;
        this.handlers.onError?.(msg);
        this.flushQueue();
        continue;
      }
      if (msg.frame_seq <= this.lastSeq) {
        continue; // stale frame from before a reconnect
      }
      this.lastSeq = msg.frame_seq;
      this.lastFrame = msg;
      this.handlers.onFrame(msg);
      for (const event of msg.events) {
        this.handlers.onEvent?.(event);
      }
      if (msg.settled) {
        this.awaitingSettle = false;
        this.flushQueue();
      }
    }
  }

  send(cmd: Command): void {
    if (this.awaitingSettle) {
      this.queue.push(cmd);
      return;
    }
    this.awaitingSettle = true;
    this.transport.send(serializeCommand(cmd) + "\n");
  }

  private flushQueue(): void {
    const next = this.queue.shift();
    if (next !== undefined) {
      this.awaitingSettle = true;
      this.transport.send(serializeCommand(next) + "\n");
    }
  }

  close(): void {
    this.transport.send(serializeCommand({ type: "quit" }) + "\n");
    this.transport.close();
  }
}
