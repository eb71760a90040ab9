// Oscilloscope-style trace of the 256-sample envelope preview that rides on
// every state message.

/** Map preview samples onto pixel coordinates. Sample values are clamped to
 *  [-1, 1]; x spans the full width, y puts +1 at the top edge. */
export function tracePoints(
  samples: number[],
  width: number,
  height: number,
): Array<[number, number]> {
  const n = samples.length;
  if (n === 0) {
    return [];
  }
  const points: Array<[number, number]> = [];
  for (let i = 0; i < n; i++) {
    const clamped = Math.min(1, Math.max(-1, samples[i]));
    const x = n === 1 ? 0 : (i / (n - 1)) * width;
    const y = (height / 2) * (1 - clamped);
    points.push([x, y]);
  }
  return points;
}

export function drawWaveform(
  ctx: CanvasRenderingContext2D,
  samples: number[],
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#02120a";
  ctx.fillRect(0, 0, width, height);

  ctx.strokeStyle = "#1d4d33";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, height / 2);
  ctx.lineTo(width, height / 2);
  ctx.stroke();

  const points = tracePoints(samples, width, height);
  if (points.length < 2) {
    return;
  }
  ctx.strokeStyle = "#4caf50";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(points[0][0], points[0][1]);
  for (let i = 1; i < points.length; i++) {
    ctx.lineTo(points[i][0], points[i][1]);
  }
  ctx.stroke();
}
