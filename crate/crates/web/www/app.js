import init, { signal_curve, asymptote_curve, interplay_map, classify } from "./pkg/pdc_zeno_web.js";

const MAX_LENGTH = 3;
const CURVE_POINTS = 301;
const MAP_SIZE = 81;
const KAPPA_MAX = 10;
const DELTA_MAX = 10;

const inputs = ["gamma", "kappa", "delta", "length"].map((id) => document.getElementById(id));
const value = (id) => parseFloat(document.getElementById(id).value);

function drawCurve(exact, asymptote) {
  const canvas = document.getElementById("curve");
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, width, height);
  const top = Math.max(1e-12, ...exact, ...asymptote) * 1.05;
  const x = (i) => pad + (i / (exact.length - 1)) * (width - 2 * pad);
  const y = (v) => height - pad - (v / top) * (height - 2 * pad);

  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, width - 2 * pad, height - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText("0", pad - 12, height - pad + 4);
  ctx.fillText(top.toPrecision(3), 2, pad + 4);
  ctx.fillText(`L = ${MAX_LENGTH}`, width - pad - 30, height - pad + 16);

  const line = (data, color) => {
    if (data.length === 0) return;
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    data.forEach((v, i) => (i === 0 ? ctx.moveTo(x(i), y(v)) : ctx.lineTo(x(i), y(v))));
    ctx.stroke();
  };
  line(asymptote, "#d29922");
  line(exact, "#1f6feb");
}

function drawMap(values) {
  const canvas = document.getElementById("map");
  const ctx = canvas.getContext("2d");
  const image = ctx.createImageData(MAP_SIZE, MAP_SIZE);
  const top = Math.max(1e-300, ...values);
  for (let row = 0; row < MAP_SIZE; row++) {
    for (let col = 0; col < MAP_SIZE; col++) {
      const t = Math.sqrt(values[row * MAP_SIZE + col] / top);
      // kappa increases upwards
      const p = 4 * ((MAP_SIZE - 1 - row) * MAP_SIZE + col);
      image.data[p] = 255 * Math.min(1, 1.6 * t);
      image.data[p + 1] = 255 * Math.max(0, 1.6 * t - 0.6);
      image.data[p + 2] = 255 * (0.35 * (1 - t));
      image.data[p + 3] = 255;
    }
  }
  const scratch = new OffscreenCanvas(MAP_SIZE, MAP_SIZE);
  scratch.getContext("2d").putImageData(image, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(scratch, 0, 0, canvas.width, canvas.height);

  // current (delta, kappa) marker
  const mx = (value("delta") / DELTA_MAX) * canvas.width;
  const my = canvas.height - (value("kappa") / KAPPA_MAX) * canvas.height;
  ctx.strokeStyle = "#fff";
  ctx.strokeRect(mx - 4, my - 4, 8, 8);
}

let lastMapKey = "";
let mapValues = [];

function update() {
  inputs.forEach((el) => (el.nextElementSibling.textContent = el.value));
  const [g, k, d, l] = ["gamma", "kappa", "delta", "length"].map(value);

  drawCurve(
    Array.from(signal_curve(g, k, d, MAX_LENGTH, CURVE_POINTS)),
    Array.from(asymptote_curve(g, k, d, MAX_LENGTH, CURVE_POINTS)),
  );

  const mapKey = `${g}:${l}`;
  if (mapKey !== lastMapKey) {
    mapValues = Array.from(interplay_map(g, l, KAPPA_MAX, DELTA_MAX, MAP_SIZE));
    lastMapKey = mapKey;
  }
  drawMap(mapValues);

  const summary = classify(g, k, d);
  document.getElementById("regime").textContent = summary.regime;
  document.getElementById("window").textContent = Number.isNaN(summary.kappa_low)
    ? ""
    : `(growth window κ ∈ [${summary.kappa_low.toFixed(3)}, ${summary.kappa_high.toFixed(3)}])`;
  summary.free();
}

await init();
inputs.forEach((el) => el.addEventListener("input", update));
update();
