/**
 * Manual landmark annotation: a 90-point click-through state machine used
 * when an upload has no precomputed landmark file. Pure logic; the canvas
 * layer in main.ts only draws this state and forwards clicks.
 *
 * Point ordering matches the engine's canonical layout.
 */

export interface Point {
  x: number;
  y: number;
}

export const LANDMARK_COUNT = 90;

export const LANDMARK_GROUPS: ReadonlyArray<{ name: string; count: number }> = [
  { name: "jaw", count: 21 },
  { name: "right brow", count: 8 },
  { name: "left brow", count: 8 },
  { name: "nose", count: 12 },
  { name: "right eye", count: 10 },
  { name: "left eye", count: 10 },
  { name: "outer lip", count: 12 },
  { name: "inner lip", count: 9 },
];

export class AnnotationSession {
  private points: Point[] = [];

  constructor(
    public readonly width: number,
    public readonly height: number,
  ) {
    if (width <= 0 || height <= 0) {
      throw new RangeError("image dimensions must be positive");
    }
  }

  get count(): number {
    return this.points.length;
  }

  get isComplete(): boolean {
    return this.points.length === LANDMARK_COUNT;
  }

  /** Group the next click belongs to, or null once complete. */
  currentGroup(): { name: string; indexInGroup: number } | null {
    if (this.isComplete) return null;
    let offset = 0;
    for (const group of LANDMARK_GROUPS) {
      if (this.points.length < offset + group.count) {
        return { name: group.name, indexInGroup: this.points.length - offset };
      }
      offset += group.count;
    }
    return null;
  }

  private checkBounds(p: Point): void {
    if (
      !Number.isFinite(p.x) ||
      !Number.isFinite(p.y) ||
      p.x < 0 ||
      p.y < 0 ||
      p.x > this.width - 1 ||
      p.y > this.height - 1
    ) {
      throw new RangeError(
        `point (${p.x}, ${p.y}) outside image ${this.width}x${this.height}`,
      );
    }
  }

  addPoint(p: Point): void {
    if (this.isComplete) {
      throw new RangeError(`already holds all ${LANDMARK_COUNT} points`);
    }
    this.checkBounds(p);
    this.points.push({ ...p });
  }

  movePoint(index: number, p: Point): void {
    if (index < 0 || index >= this.points.length) {
      throw new RangeError(`no point at index ${index}`);
    }
    this.checkBounds(p);
    this.points[index] = { ...p };
  }

  undo(): void {
    this.points.pop();
  }

  reset(): void {
    this.points = [];
  }

  /** Index of the placed point nearest to p within `radius`, or -1. */
  hitTest(p: Point, radius: number): number {
    let best = -1;
    let bestDist = radius * radius;
    this.points.forEach((q, i) => {
      const d = (q.x - p.x) ** 2 + (q.y - p.y) ** 2;
      if (d <= bestDist) {
        best = i;
        bestDist = d;
      }
    });
    return best;
  }

  snapshot(): ReadonlyArray<Point> {
    return this.points.map((p) => ({ ...p }));
  }

  /** Serialize to the engine's landmark file format. */
  toLandmarksJSON(): string {
    if (!this.isComplete) {
      throw new RangeError(
        `need ${LANDMARK_COUNT} points, have ${this.points.length}`,
      );
    }
    return JSON.stringify({ points: this.points.map((p) => [p.x, p.y]) });
  }
}
