/**
 * Minimal deterministic SVG plot canvas: fixed-precision coordinates, no
 * timestamps or generated ids, so identical inputs give identical bytes.
 */

export interface Margins {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export type ScaleKind = "linear" | "log" | "sqrt";

export class Scale {
  constructor(
    readonly kind: ScaleKind,
    readonly domain: [number, number],
    readonly range: [number, number],
  ) {}

  private fwd(x: number): number {
    if (this.kind === "log") return Math.log10(x);
    if (this.kind === "sqrt") return Math.sqrt(x);
    return x;
  }

  apply(x: number): number {
    const [d0, d1] = [this.fwd(this.domain[0]), this.fwd(this.domain[1])];
    const t = d1 === d0 ? 0.5 : (this.fwd(x) - d0) / (d1 - d0);
    return this.range[0] + t * (this.range[1] - this.range[0]);
  }

  ticks(): number[] {
    const [lo, hi] = this.domain;
    if (this.kind === "log") {
      const out: number[] = [];
      for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
        out.push(10 ** e);
      }
      return out.length > 0 ? out : [lo, hi];
    }
    const span = hi - lo;
    if (span <= 0) return [lo];
    const step = 10 ** Math.floor(Math.log10(span / 4));
    const mult = span / step > 20 ? 5 : span / step > 8 ? 2 : 1;
    const out: number[] = [];
    for (let v = Math.ceil(lo / (step * mult)) * step * mult; v <= hi + 1e-9; v += step * mult) {
      out.push(Number(v.toPrecision(10)));
    }
    return out;
  }
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  return x.toFixed(2).replace(/\.00$/, "").replace(/(\.\d)0$/, "$1");
}

export function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-2)) {
    const e = Math.floor(Math.log10(Math.abs(v)));
    const mant = v / 10 ** e;
    return mant === 1 ? `1e${e}` : `${fmt(mant)}e${e}`;
  }
  return Number.isInteger(v) ? String(v) : fmt(v);
}

export const PALETTE = [
  "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
  "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e", "#aec7e8",
];

export class Canvas {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
    readonly margins: Margins = { left: 64, right: 24, top: 28, bottom: 48 },
  ) {}

  get plotLeft(): number {
    return this.margins.left;
  }
  get plotRight(): number {
    return this.width - this.margins.right;
  }
  get plotTop(): number {
    return this.margins.top;
  }
  get plotBottom(): number {
    return this.height - this.margins.bottom;
  }

  add(part: string): void {
    this.parts.push(part);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, cls = ""): void {
    const klass = cls ? ` class="${cls}"` : "";
    this.add(
      `<line${klass} x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${fmt(width)}"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, cls = "", dash = ""): void {
    if (points.length === 0) return;
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const klass = cls ? ` class="${cls}"` : "";
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.add(
      `<polyline${klass} points="${pts}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${fmt(width)}"${dashAttr}/>`,
    );
  }

  circle(x: number, y: number, radius: number, fill: string, cls = ""): void {
    const klass = cls ? ` class="${cls}"` : "";
    this.add(`<circle${klass} cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(radius)}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, cls = ""): void {
    const klass = cls ? ` class="${cls}"` : "";
    this.add(
      `<rect${klass} x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }

  text(x: number, y: number, content: string, opts: { anchor?: string; size?: number; cls?: string; rotate?: boolean } = {}): void {
    const anchor = opts.anchor ?? "middle";
    const size = opts.size ?? 11;
    const klass = opts.cls ? ` class="${opts.cls}"` : "";
    const transform = opts.rotate ? ` transform="rotate(-90 ${fmt(x)} ${fmt(y)})"` : "";
    this.add(
      `<text${klass} x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
        `font-family="sans-serif" font-size="${size}"${transform}>${escapeXml(content)}</text>`,
    );
  }

  axes(xs: Scale, ys: Scale, xlabel: string, ylabel: string): void {
    this.line(this.plotLeft, this.plotBottom, this.plotRight, this.plotBottom, "#000");
    this.line(this.plotLeft, this.plotTop, this.plotLeft, this.plotBottom, "#000");
    for (const v of xs.ticks()) {
      const x = xs.apply(v);
      this.line(x, this.plotBottom, x, this.plotBottom + 4, "#000");
      this.text(x, this.plotBottom + 16, fmtTick(v), { size: 10 });
    }
    for (const v of ys.ticks()) {
      const y = ys.apply(v);
      this.line(this.plotLeft - 4, y, this.plotLeft, y, "#000");
      this.text(this.plotLeft - 7, y + 3, fmtTick(v), { anchor: "end", size: 10 });
    }
    this.text((this.plotLeft + this.plotRight) / 2, this.height - 10, xlabel);
    this.text(16, (this.plotTop + this.plotBottom) / 2, ylabel, { rotate: true });
  }

  legend(entries: Array<[string, string]>): void {
    let y = this.plotTop + 8;
    for (const [label, color] of entries) {
      this.add(
        `<line x1="${fmt(this.plotRight - 110)}" y1="${fmt(y)}" x2="${fmt(this.plotRight - 86)}" ` +
          `y2="${fmt(y)}" stroke="${color}" stroke-width="2"/>`,
      );
      this.text(this.plotRight - 80, y + 3, label, { anchor: "start", size: 10 });
      y += 14;
    }
  }

  render(title: string): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n` +
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="#ffffff"/>\n` +
      `<text x="${fmt(this.width / 2)}" y="16" text-anchor="middle" font-family="sans-serif" ` +
      `font-size="13" font-weight="bold">${escapeXml(title)}</text>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
