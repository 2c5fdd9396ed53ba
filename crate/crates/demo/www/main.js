import init, { layout, path_loss_curve, hover_power_curves } from "./pkg/uavgrid_demo.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function report(el, fn) {
  try {
    fn();
  } catch (e) {
    $(el).textContent = `error: ${e.message ?? e}`;
  }
}

function plot(canvas, xs, series, opts) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 56, r: 12, t: 12, b: 36 };
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.ys.filter((y) => y !== null));
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y1 - y0 < 1e-9) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const sy = (y) => h - pad.b - ((y - y0) / (y1 - y0)) * (h - pad.t - pad.b);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 4; i++) {
    const y = y0 + ((y1 - y0) * i) / 4;
    ctx.fillText(y.toFixed(1), 4, sy(y) + 4);
    const x = x0 + ((x1 - x0) * i) / 4;
    ctx.fillText(x.toFixed(1), sx(x) - 10, h - pad.b + 14);
  }
  ctx.fillText(opts.xlabel, w / 2 - 30, h - 6);
  series.forEach((s, i) => {
    ctx.strokeStyle = COLORS[i % COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let pen = false;
    s.ys.forEach((y, j) => {
      if (y === null) { pen = false; return; }
      if (pen) ctx.lineTo(sx(xs[j]), sy(y)); else ctx.moveTo(sx(xs[j]), sy(y));
      pen = true;
    });
    ctx.stroke();
    if (s.label) ctx.fillText(s.label, w - pad.r - 90, pad.t + 14 + 14 * i);
  });
  (opts.marks ?? []).forEach((m) => {
    ctx.strokeStyle = "#000";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(sx(m.x), pad.t);
    ctx.lineTo(sx(m.x), h - pad.b);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillText(m.label, sx(m.x) + 4, pad.t + 12);
  });
}

function drawLayout() {
  const k = Number($("lay-k").value);
  $("lay-k-val").textContent = k;
  report("lay-out", () => {
    const d = Number($("lay-d").value);
    const v = JSON.parse(layout(k, d, $("lay-env").value, Number($("lay-a").value)));
    const c = $("lay-canvas");
    const ctx = c.getContext("2d");
    const s = (c.width / 2 - 10) / d;
    const o = c.width / 2;
    ctx.clearRect(0, 0, c.width, c.height);
    ctx.fillStyle = "rgba(31,119,180,0.12)";
    ctx.strokeStyle = "rgba(31,119,180,0.7)";
    for (const [x, y] of v.centers) {
      ctx.beginPath();
      ctx.arc(o + x * s, o - y * s, v.cell_radius * s, 0, 2 * Math.PI);
      ctx.fill();
      ctx.stroke();
    }
    ctx.strokeStyle = "#000";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(o, o, d * s, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.lineWidth = 1;
    ctx.fillStyle = "#d62728";
    for (const [x, y] of v.centers) ctx.fillRect(o + x * s - 2, o - y * s - 2, 4, 4);
    $("lay-out").textContent =
      `cell radius ${v.cell_radius.toFixed(1)} m, covering radius ${v.covering_radius.toFixed(1)} m, ` +
      `altitude ${v.altitude.toFixed(1)} m`;
  });
}

function drawLoss() {
  const a = Number($("pl-a").value);
  $("pl-a-val").textContent = a.toFixed(2);
  report("pl-out", () => {
    const v = JSON.parse(path_loss_curve($("pl-env").value, a, Number($("pl-r").value), 600));
    plot($("pl-canvas"), v.theta_deg, [{ ys: v.loss_db, label: "path loss (dB)" }], {
      xlabel: "elevation (deg)",
      marks: [{ x: v.theta_star_deg, label: `θ* = ${v.theta_star_deg.toFixed(2)}°` }],
    });
    $("pl-out").textContent = `θ* = ${v.theta_star_deg.toFixed(3)}°, loss ${v.loss_star_db.toFixed(2)} dB`;
  });
}

function drawPower() {
  report("hp-out", () => {
    const alts = $("hp-alt").value.split(",").map(Number).filter((x) => x > 0);
    const v = JSON.parse(hover_power_curves(Float64Array.from(alts), Number($("hp-w").value), 200));
    plot(
      $("hp-canvas"),
      v.wind_10m,
      v.series.map((s) => ({ ys: s.power_w, label: `${s.altitude} m` })),
      { xlabel: "wind at 10 m (m/s)" },
    );
    $("hp-out").textContent = `gaps mark counter-wind above ${v.hover_limit} m/s`;
  });
}

await init();
for (const id of ["lay-k", "lay-d", "lay-env", "lay-a"]) $(id).addEventListener("input", drawLayout);
for (const id of ["pl-env", "pl-a", "pl-r"]) $(id).addEventListener("input", drawLoss);
for (const id of ["hp-alt", "hp-w"]) $(id).addEventListener("input", drawPower);
drawLayout();
drawLoss();
drawPower();
