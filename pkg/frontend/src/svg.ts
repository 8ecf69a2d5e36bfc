/**
 * Small deterministic SVG chart toolkit: linear/log scales, tick
 * generation, and a plot frame with axes, labels, and a legend.
 *
 * Everything renders to a plain SVG string, so identical inputs produce
 * byte-identical files.
 */

export interface Scale {
  (value: number): number;
  ticks(): number[];
  domain: [number, number];
}

const TICK_STEPS = [1, 2, 5];

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const rawStep = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag * 10;
  for (const s of TICK_STEPS) {
    if (s * mag >= rawStep) {
      step = s * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.ticks = () => niceTicks(d0, d1);
  scale.domain = domain;
  return scale;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  const scale = ((value: number) => inner(Math.log10(value))) as Scale;
  scale.ticks = () => {
    const ticks: number[] = [];
    for (let e = Math.ceil(Math.log10(d0)); e <= Math.floor(Math.log10(d1)); e += 1) {
      ticks.push(Math.pow(10, e));
    }
    return ticks.length >= 2 ? ticks : [d0, d1];
  };
  scale.domain = domain;
  return scale;
}

export function extent(values: number[], padFraction = 0.05): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const pad = (hi - lo || Math.abs(hi) || 1) * padFraction;
  return [lo - pad, hi + pad];
}

/** Multiplicative padding around positive values, for log-scaled axes. */
export function logExtent(values: number[], padFactor = 1.5): [number, number] {
  const positive = values.filter((v) => v > 0);
  if (positive.length === 0) {
    throw new Error('log extent needs at least one positive value');
  }
  return [Math.min(...positive) / padFactor, Math.max(...positive) * padFactor];
}

const fmt = (x: number): string => {
  const rounded = Math.round(x * 1e6) / 1e6;
  return Object.is(rounded, -0) ? '0' : String(rounded);
};

function tickLabel(value: number, log: boolean): string {
  if (log) {
    const e = Math.round(Math.log10(value));
    return `1e${e}`;
  }
  const abs = Math.abs(value);
  if (value !== 0 && (abs >= 1e5 || abs < 1e-3)) {
    return value.toExponential(0);
  }
  return String(Math.round(value * 1e9) / 1e9);
}

export const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];

export interface FrameOptions {
  width?: number;
  height?: number;
  title: string;
  xLabel: string;
  yLabel: string;
  logY?: boolean;
}

/** A chart frame with margins, axes, and helpers for marks in data space. */
export class Frame {
  readonly width: number;
  readonly height: number;
  readonly x: Scale;
  readonly y: Scale;
  private readonly parts: string[] = [];
  private readonly legendEntries: { label: string; color: string }[] = [];
  private readonly opts: FrameOptions;
  private readonly margin = { left: 64, right: 16, top: 34, bottom: 46 };

  constructor(xDomain: [number, number], yDomain: [number, number], opts: FrameOptions) {
    this.opts = opts;
    this.width = opts.width ?? 560;
    this.height = opts.height ?? 400;
    const { left, right, top, bottom } = this.margin;
    this.x = linearScale(xDomain, [left, this.width - right]);
    this.y = (opts.logY ? logScale : linearScale)(yDomain, [this.height - bottom, top]);
  }

  polyline(xs: number[], ys: number[], color: string, dashed = false): void {
    const pts = xs.map((x, i) => `${fmt(this.x(x))},${fmt(this.y(ys[i]))}`).join(' ');
    const dash = dashed ? ' stroke-dasharray="6,4"' : '';
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"${dash}/>`,
    );
  }

  marker(x: number, y: number, color: string, r = 3.5, cls = 'marker'): void {
    this.parts.push(
      `<circle class="${cls}" cx="${fmt(this.x(x))}" cy="${fmt(this.y(y))}" r="${r}" ` +
        `fill="${color}" stroke="none"/>`,
    );
  }

  star(x: number, y: number, color: string): void {
    const cx = this.x(x);
    const cy = this.y(y);
    const pts: string[] = [];
    for (let i = 0; i < 10; i += 1) {
      const r = i % 2 === 0 ? 7 : 3;
      const a = (Math.PI / 5) * i - Math.PI / 2;
      pts.push(`${fmt(cx + r * Math.cos(a))},${fmt(cy + r * Math.sin(a))}`);
    }
    this.parts.push(`<polygon class="eta-marker" points="${pts.join(' ')}" fill="${color}"/>`);
  }

  legend(label: string, color: string): void {
    if (!this.legendEntries.some((e) => e.label === label)) {
      this.legendEntries.push({ label, color });
    }
  }

  private axes(): string {
    const { left, right, top, bottom } = this.margin;
    const x0 = left;
    const x1 = this.width - right;
    const y0 = this.height - bottom;
    const out: string[] = [];
    out.push(`<rect x="${x0}" y="${top}" width="${x1 - x0}" height="${y0 - top}" ` +
      'fill="none" stroke="#888" stroke-width="1"/>');
    for (const t of this.x.ticks()) {
      const px = fmt(this.x(t));
      out.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#888"/>`);
      out.push(`<text x="${px}" y="${y0 + 18}" font-size="11" text-anchor="middle">` +
        `${tickLabel(t, false)}</text>`);
    }
    for (const t of this.y.ticks()) {
      const py = fmt(this.y(t));
      out.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#888"/>`);
      out.push(`<text x="${x0 - 7}" y="${py}" font-size="11" text-anchor="end" ` +
        `dominant-baseline="middle">${tickLabel(t, !!this.opts.logY)}</text>`);
    }
    out.push(`<text x="${(x0 + x1) / 2}" y="${this.height - 10}" font-size="12" ` +
      `text-anchor="middle">${this.opts.xLabel}</text>`);
    out.push(`<text x="16" y="${(top + y0) / 2}" font-size="12" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${(top + y0) / 2})">${this.opts.yLabel}</text>`);
    out.push(`<text x="${(x0 + x1) / 2}" y="20" font-size="13" font-weight="bold" ` +
      `text-anchor="middle">${this.opts.title}</text>`);
    return out.join('\n');
  }

  private legendBlock(): string {
    if (this.legendEntries.length === 0) {
      return '';
    }
    const x = this.margin.left + 10;
    const out: string[] = [];
    this.legendEntries.forEach(({ label, color }, i) => {
      const y = this.margin.top + 14 + 16 * i;
      out.push(`<line x1="${x}" y1="${y}" x2="${x + 18}" y2="${y}" stroke="${color}" ` +
        'stroke-width="2"/>');
      out.push(`<text x="${x + 24}" y="${y + 4}" font-size="11">${label}</text>`);
    });
    return out.join('\n');
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
        `viewBox="0 0 ${this.width} ${this.height}" font-family="sans-serif">`,
      `<rect width="${this.width}" height="${this.height}" fill="white"/>`,
      this.axes(),
      ...this.parts,
      this.legendBlock(),
      '</svg>',
      '',
    ].join('\n');
  }
}
