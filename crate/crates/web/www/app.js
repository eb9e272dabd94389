import init, { sample, tv_curve, solve_program } from "./pkg/flipcolor_web.js";

const palette = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45"];
const $ = (id) => document.getElementById(id);

function inputs() {
  return {
    graph: $("graph").value,
    k: Number($("k").value),
    chain: $("chain").value,
    params: $("params").value,
  };
}

function draw(coloring, edges) {
  const svg = $("drawing");
  const n = coloring.length;
  const r = 120, cx = 150, cy = 150;
  const pos = Array.from({ length: n }, (_, i) => [
    cx + r * Math.cos((2 * Math.PI * i) / n - Math.PI / 2),
    cy + r * Math.sin((2 * Math.PI * i) / n - Math.PI / 2),
  ]);
  let html = "";
  for (let e = 0; e < edges.length; e += 2) {
    const [a, b] = [pos[edges[e]], pos[edges[e + 1]]];
    html += `<line x1="${a[0]}" y1="${a[1]}" x2="${b[0]}" y2="${b[1]}" stroke="#888"/>`;
  }
  coloring.forEach((c, i) => {
    const [x, y] = pos[i];
    html += `<circle cx="${x}" cy="${y}" r="16" fill="${palette[c % palette.length]}" stroke="#222"/>`;
    html += `<text x="${x}" y="${y + 4}" text-anchor="middle" fill="#fff" font-size="12">${i}</text>`;
  });
  svg.innerHTML = html;
}

function plot(tv) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 30;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, 10, w - pad - 10, h - pad - 10);
  const x = (t) => pad + ((w - pad - 10) * t) / Math.max(1, tv.length - 1);
  const y = (d) => 10 + (h - pad - 10) * (1 - d);
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, y(0.25));
  ctx.lineTo(w - 10, y(0.25));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = "#4363d8";
  ctx.beginPath();
  tv.forEach((d, t) => (t === 0 ? ctx.moveTo(x(t), y(d)) : ctx.lineTo(x(t), y(d))));
  ctx.stroke();
  ctx.fillStyle = "#222";
  ctx.fillText("1", 12, y(1) + 4);
  ctx.fillText("1/4", 4, y(0.25) + 4);
  ctx.fillText(`t = ${tv.length - 1}`, w - 60, h - 8);
}

function guard(out, f) {
  try {
    f();
  } catch (e) {
    $(out).textContent = `error: ${e.message ?? e}`;
  }
}

await init();
$("status").textContent = "";

$("run").onclick = () => guard("sample-out", () => {
  const { graph, k, chain, params } = inputs();
  const res = sample(graph, k, chain, params, Number($("steps").value), Number($("seed").value));
  draw(Array.from(res.coloring), Array.from(res.edges));
  $("sample-out").textContent = `coloring: ${Array.from(res.coloring).join(" ")}\nmoves: ${res.moves}\nproper: ${res.proper}`;
});

$("tv").onclick = () => guard("tv-out", () => {
  const { graph, k, chain, params } = inputs();
  const tv = Array.from(tv_curve(graph, k, chain, params, Number($("tmax").value)));
  plot(tv);
  const t = tv.findIndex((d) => d <= 0.25);
  $("tv-out").textContent = t < 0 ? `TV above 1/4 up to t = ${tv.length - 1}` : `t_mix(1/4) = ${t}`;
});

$("lp-red").onclick = () => guard("lp-out", () => ($("lp-out").textContent = solve_program(false)));
$("lp-star").onclick = () => guard("lp-out", () => ($("lp-out").textContent = solve_program(true)));
