/**
 * Request sequencing: concurrent fetches per view are allowed, and a
 * response is applied only if no newer request for the same slot has been
 * issued since.
 */

export class RequestSequencer {
  private counters = new Map<string, number>();

  next(slot: string): number {
    const token = (this.counters.get(slot) ?? 0) + 1;
    this.counters.set(slot, token);
    return token;
  }

  isCurrent(slot: string, token: number): boolean {
    return this.counters.get(slot) === token;
  }
}
