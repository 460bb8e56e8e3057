/**
 * TCP line transport for Node: connects to the engine's protocol port.
 * Browsers use a WebSocket bridge instead; the session client is agnostic.
 */

import * as net from "node:net";

import type { Transport } from "./client.js";

export interface NodeTransport extends Transport {
  socket: net.Socket;
  connected: Promise<void>;
}

export function connectTcp(
  host: string,
  port: number,
  onData: (chunk: string) => void,
): NodeTransport {
  const socket = net.createConnection({ host, port });
  socket.setEncoding("utf-8");
  socket.on("data", (chunk: string) => onData(chunk));
  const connected = new Promise<void>((resolve, reject) => {
    socket.once("connect", () => resolve());
    socket.once("error", (err) => reject(err));
  });
  return {
    socket,
    connected,
    send(line: string): void {
      socket.write(line);
    },
    close(): void {
      socket.end();
    },
  };
}
