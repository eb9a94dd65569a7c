/** Thin WebSocket wrapper for one session. */
import {
  ControlAction,
  EngineParams,
  Point,
  ServerMessage,
  controlMessage,
  parseServerMessage,
  startMessage,
} from './protocol.js';

export class SessionClient {
  private socket: WebSocket | null = null;

  constructor(
    private readonly onMessage: (msg: ServerMessage) => void,
    private readonly onClose: () => void,
  ) {}

  open(points: Point[], params: EngineParams): void {
    const scheme = location.protocol === 'https:' ? 'wss' : 'ws';
    const socket = new WebSocket(`${scheme}://${location.host}/session`);
    this.socket = socket;
    socket.onopen = () => socket.send(startMessage(points, params));
    socket.onmessage = (event) => {
      const msg = parseServerMessage(String(event.data));
      if (msg) this.onMessage(msg);
    };
    socket.onclose = () => {
      if (this.socket === socket) this.socket = null;
      this.onClose();
    };
  }

  control(action: ControlAction, extra: Record<string, unknown> = {}): void {
    if (this.socket && this.socket.readyState === WebSocket.OPEN) {
      this.socket.send(controlMessage(action, extra));
    }
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}
